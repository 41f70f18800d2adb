#include "scfgame/presets.hpp"

#include <stdexcept>

namespace scfgame {

namespace {

double basis_points(LoanTermClass term) {
  switch (term) {
    case LoanTermClass::WithinOneYear:
      return 435.0;
    case LoanTermClass::OneToFiveYears:
      return 475.0;
    case LoanTermClass::AboveFiveYears:
      return 490.0;
  }
  throw std::invalid_argument("unknown loan term class");
}

}  // namespace

const char* to_string(LoanTermClass term) {
  switch (term) {
    case LoanTermClass::WithinOneYear:
      return "within_one_year";
    case LoanTermClass::OneToFiveYears:
      return "one_to_five_years";
    case LoanTermClass::AboveFiveYears:
      return "above_five_years";
  }
  return "unknown";
}

double benchmark_rate(LoanTermClass term) {
  return basis_points(term) / 10000.0;
}

RatePreset make_rate_preset(LoanTermClass term, double principal) {
  return {term, benchmark_rate(term), principal};
}

ModelParams apply_rate_preset(const RatePreset& preset,
                              const ModelParams& params, RateTarget target) {
  if (preset.annual_rate != benchmark_rate(preset.loan_term_class)) {
    throw std::invalid_argument(
        std::string("rate preset mismatch: annual_rate does not equal the "
                    "tabulated rate for term class ") +
        to_string(preset.loan_term_class));
  }
  // principal * bp is exact for desk-scale principals, so the division
  // yields the correctly rounded interest amount.
  const double interest =
      preset.principal * basis_points(preset.loan_term_class) / 10000.0;
  ModelParams out = params;
  switch (target) {
    case RateTarget::SmeLoanInterest:
      out.I1 = interest;
      break;
    case RateTarget::CoreRepaymentInterest:
      out.I2 = interest;
      break;
  }
  return out;
}

ModelParams preset_bistable() {
  ModelParams p;
  p.R1 = 10.0;
  p.R2 = 10.0;
  p.R3 = 10.0;
  p.C1 = 2.0;
  p.C2 = 3.0;
  p.C3 = 0.3;
  p.m1 = 0.0;
  p.m2 = 0.0;
  p.m3 = 0.0;
  p.r = 5.0;
  p.theta = 0.5;
  p.K = 4.0;
  p.I1 = 1.0;
  p.I2 = 0.5;
  p.S = 6.0;
  return p;
}

ModelParams preset_origin_only() {
  ModelParams p = preset_bistable();
  p.r = 1.0;  // financing never pays: r < C1 even before the repayment burden
  return p;
}

ModelParams preset_interior() {
  ModelParams p = preset_bistable();
  p.C2 = 2.0;
  p.C3 = 0.25;
  return p;
}

const std::map<std::string, ModelParams (*)()>& named_presets() {
  static const std::map<std::string, ModelParams (*)()> presets = {
      {"bistable", &preset_bistable},
      {"origin-only", &preset_origin_only},
      {"interior", &preset_interior},
  };
  return presets;
}

}  // namespace scfgame
