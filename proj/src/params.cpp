#include "scfgame/params.hpp"

#include <cmath>
#include <cstring>
#include <sstream>

namespace scfgame {

namespace {

std::uint64_t fnv1a(const unsigned char* data, std::size_t n,
                    std::uint64_t h = 1469598103934665603ull) {
  for (std::size_t i = 0; i < n; ++i) {
    h ^= data[i];
    h *= 1099511628211ull;
  }
  return h;
}

void require_nonnegative(std::vector<ValidationIssue>& issues, double value,
                         const char* field, const char* what) {
  if (!(value >= 0.0)) {
    std::ostringstream msg;
    msg << field << " (" << what << ") must be >= 0, got " << value;
    issues.push_back({ParamFault::NegativeCost, field, msg.str()});
  }
}

void require_reduction_bounded(std::vector<ValidationIssue>& issues,
                               double reduction, double cost,
                               const char* m_field, const char* c_field) {
  if (reduction > cost) {
    std::ostringstream msg;
    msg << m_field << " = " << reduction << " exceeds " << c_field << " = "
        << cost << "; a cost reduction cannot exceed the cost it reduces";
    issues.push_back({ParamFault::ReductionExceedsCost, m_field, msg.str()});
  }
}

}  // namespace

std::uint64_t ModelParams::fingerprint() const {
  const double fields[] = {R1, R2, R3, C1, C2, C3, m1, m2,
                           m3, r,  theta, K, I1, I2, S};
  unsigned char bytes[sizeof(fields)];
  std::memcpy(bytes, fields, sizeof(fields));
  return fnv1a(bytes, sizeof(bytes));
}

const std::vector<std::pair<std::string, ParamField>>& param_fields_ordered() {
  static const std::vector<std::pair<std::string, ParamField>> fields = {
      {"R1", &ModelParams::R1}, {"R2", &ModelParams::R2},
      {"R3", &ModelParams::R3}, {"C1", &ModelParams::C1},
      {"C2", &ModelParams::C2}, {"C3", &ModelParams::C3},
      {"m1", &ModelParams::m1}, {"m2", &ModelParams::m2},
      {"m3", &ModelParams::m3}, {"r", &ModelParams::r},
      {"theta", &ModelParams::theta}, {"K", &ModelParams::K},
      {"I1", &ModelParams::I1}, {"I2", &ModelParams::I2},
      {"S", &ModelParams::S}};
  return fields;
}

const std::map<std::string, ParamField>& param_fields() {
  static const std::map<std::string, ParamField> fields(
      param_fields_ordered().begin(), param_fields_ordered().end());
  return fields;
}

const char* to_string(ParamFault fault) {
  switch (fault) {
    case ParamFault::ThetaOutOfRange:
      return "ThetaOutOfRange";
    case ParamFault::NegativeCost:
      return "NegativeCost";
    case ParamFault::ReductionExceedsCost:
      return "ReductionExceedsCost";
  }
  return "UnknownFault";
}

std::vector<ValidationIssue> validate_params(const ModelParams& p) {
  std::vector<ValidationIssue> issues;

  if (!(p.theta >= 0.0 && p.theta <= 1.0)) {
    std::ostringstream msg;
    msg << "theta must lie in [0, 1], got " << p.theta;
    issues.push_back({ParamFault::ThetaOutOfRange, "theta", msg.str()});
  }

  require_nonnegative(issues, p.C1, "C1", "participation cost");
  require_nonnegative(issues, p.C2, "C2", "participation cost");
  require_nonnegative(issues, p.C3, "C3", "participation cost");
  require_nonnegative(issues, p.m1, "m1", "cost reduction");
  require_nonnegative(issues, p.m2, "m2", "cost reduction");
  require_nonnegative(issues, p.m3, "m3", "cost reduction");
  require_nonnegative(issues, p.K, "K", "repayment component");
  require_nonnegative(issues, p.I1, "I1", "loan interest");
  require_nonnegative(issues, p.I2, "I2", "repayment interest");

  require_reduction_bounded(issues, p.m1, p.C1, "m1", "C1");
  require_reduction_bounded(issues, p.m2, p.C2, "m2", "C2");
  require_reduction_bounded(issues, p.m3, p.C3, "m3", "C3");

  return issues;
}

ValidationError::ValidationError(std::vector<ValidationIssue> issues)
    : std::runtime_error([&issues] {
        std::ostringstream msg;
        msg << "invalid model parameters:";
        for (const auto& issue : issues) {
          msg << "\n  [" << to_string(issue.fault) << "] " << issue.message;
        }
        return msg.str();
      }()),
      issues_(std::move(issues)) {}

ModelParams validated(const ModelParams& params) {
  auto issues = validate_params(params);
  if (!issues.empty()) {
    throw ValidationError(std::move(issues));
  }
  return params;
}

double distance(const StrategyState& a, const StrategyState& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

}  // namespace scfgame
