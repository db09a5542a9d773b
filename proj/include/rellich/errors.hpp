#pragma once

#include <stdexcept>
#include <string>

namespace rellich {

/// Error codes for every failure mode exposed by the library.
enum class errc {
  dimension_too_small,
  exponent_out_of_range,
  lambda_above_rellich,
  non_positive_coefficient,
  alpha_out_of_range,
  bad_grid_spec,
  grid_mismatch,
  mesh_mismatch,
  boundary_decay_violated,
  zero_denominator,
  non_convergence,
  degenerate_profile,
  newton_divergence,
  no_sign_change_in_bracket,
  parameter_out_of_range,
  cone_condition_violated,
  non_integrable_profile,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::dimension_too_small:       return "DimensionTooSmall";
    case errc::exponent_out_of_range:     return "ExponentOutOfRange";
    case errc::lambda_above_rellich:      return "LambdaAboveRellich";
    case errc::non_positive_coefficient:  return "NonPositiveCoefficient";
    case errc::alpha_out_of_range:        return "AlphaOutOfRange";
    case errc::bad_grid_spec:             return "BadGridSpec";
    case errc::grid_mismatch:             return "GridMismatch";
    case errc::mesh_mismatch:             return "MeshMismatch";
    case errc::boundary_decay_violated:   return "BoundaryDecayViolated";
    case errc::zero_denominator:          return "ZeroDenominator";
    case errc::non_convergence:           return "NonConvergence";
    case errc::degenerate_profile:        return "DegenerateProfile";
    case errc::newton_divergence:         return "NewtonDivergence";
    case errc::no_sign_change_in_bracket: return "NoSignChangeInBracket";
    case errc::parameter_out_of_range:    return "ParameterOutOfRange";
    case errc::cone_condition_violated:   return "ConeConditionViolated";
    case errc::non_integrable_profile:    return "NonIntegrableProfile";
  }
  return "UnknownError";
}

/// Is this a bad-input error (CLI exit code 1) as opposed to a numerical
/// failure (exit code 2)?
inline bool is_validation_error(errc c) {
  switch (c) {
    case errc::non_convergence:
    case errc::degenerate_profile:
    case errc::newton_divergence:
    case errc::no_sign_change_in_bracket:
      return false;
    default:
      return true;
  }
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
  throw error(code, what);
}

}  // namespace rellich
