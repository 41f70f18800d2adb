#ifndef SCFGAME_PRESETS_HPP
#define SCFGAME_PRESETS_HPP

#include <map>
#include <string>

#include "scfgame/params.hpp"

namespace scfgame {

enum class LoanTermClass {
  WithinOneYear,   // 4.35% per annum
  OneToFiveYears,  // 4.75% per annum
  AboveFiveYears,  // 4.90% per annum
};

const char* to_string(LoanTermClass term);

// Benchmark annual rate tabulated for a loan term class.
double benchmark_rate(LoanTermClass term);

struct RatePreset {
  LoanTermClass loan_term_class = LoanTermClass::WithinOneYear;
  double annual_rate = 0.0;  // must equal benchmark_rate(loan_term_class)
  double principal = 0.0;
};

RatePreset make_rate_preset(LoanTermClass term, double principal);

// Which interest amount the preset fills in.
enum class RateTarget {
  SmeLoanInterest,        // I1
  CoreRepaymentInterest,  // I2
};

// Returns params with the targeted interest amount set to
// principal * annual_rate (computed through exact basis points, so a
// principal of 100 yields the tabulated percentage value exactly).
// Throws std::invalid_argument if the preset's rate does not match its
// term class.
ModelParams apply_rate_preset(const RatePreset& preset,
                              const ModelParams& params,
                              RateTarget target = RateTarget::SmeLoanInterest);

// Named parameter presets used by the CLI and the test suites.
//
//   bistable     all three cooperation conditions hold and every cost
//                exceeds its reduction, so both the all-out vertex (0,0,0)
//                and the all-in vertex (1,1,1) attract.
//   origin-only  financing never pays (r < C1); (0,0,0) is the only
//                attracting vertex.
//   interior     carries the ninth fixed point strictly inside the cube.
ModelParams preset_bistable();
ModelParams preset_origin_only();
ModelParams preset_interior();

const std::map<std::string, ModelParams (*)()>& named_presets();

}  // namespace scfgame

#endif  // SCFGAME_PRESETS_HPP
