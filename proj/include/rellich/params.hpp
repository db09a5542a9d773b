#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "rellich/errors.hpp"

namespace rellich {

inline constexpr double pi = 3.14159265358979323846264338327950288;

/// Gamma(N/2) for integer N >= 1, by the half-integer recurrence from
/// Gamma(1/2) = sqrt(pi) and Gamma(1) = 1.
inline double gamma_half_integer(int twice_arg) {
  double g = (twice_arg % 2 == 0) ? 1.0 : std::sqrt(pi);
  double x = (twice_arg % 2 == 0) ? 1.0 : 0.5;
  while (2.0 * x < twice_arg) {
    g *= x;
    x += 1.0;
  }
  return g;
}

/// Surface measure of the unit sphere S^{N-1}.
inline double sphere_surface_measure(int N) {
  return 2.0 * std::pow(pi, 0.5 * N) / gamma_half_integer(N);
}

/// All scalar constants derived from (N, q, lambda). Immutable after
/// construction; downstream modules never re-validate.
struct ProblemParams {
  int N = 0;
  double q = 0.0;
  double lambda = 0.0;
  double gamma_N = 0.0;        // N(N-4)/4
  double beta = 0.0;           // N - q(N-4)/2
  double A = 0.0;              // gamma_N + 2
  double B2 = 0.0;             // gamma_N^2 - lambda
  double omega_N = 0.0;        // |S^{N-1}|
  double two_star_star = 0.0;  // 2N/(N-4)
};

inline ProblemParams derive_problem(int N, double q, double lambda) {
  if (!(std::isfinite(q) && std::isfinite(lambda)))
    fail(errc::parameter_out_of_range, "q and lambda must be finite");
  if (N < 5)
    fail(errc::dimension_too_small, "N must be >= 5, got " + std::to_string(N));
  if (!(q > 2.0))
    fail(errc::exponent_out_of_range, "q must exceed 2, got " + std::to_string(q));
  const double gamma_N = 0.25 * N * (N - 4);
  if (!(lambda < gamma_N * gamma_N))
    fail(errc::lambda_above_rellich,
         "lambda must be below gamma_N^2 = " + std::to_string(gamma_N * gamma_N));
  ProblemParams p;
  p.N = N;
  p.q = q;
  p.lambda = lambda;
  p.gamma_N = gamma_N;
  p.beta = N - q * 0.5 * (N - 4);
  p.A = gamma_N + 2.0;
  p.B2 = gamma_N * gamma_N - lambda;
  p.omega_N = sphere_surface_measure(N);
  p.two_star_star = 2.0 * N / (N - 4);
  return p;
}

/// Coefficients of w'''' - 2A w'' + B^2 w = |w|^{q-2} w together with the
/// roots of c^2 - 2Ac + B^2 = 0. Real roots exist only for A >= B; below
/// that the positivity of ground states is not guaranteed.
struct ODECoefficients {
  double A = 0.0;
  double B = 0.0;
  double q = 0.0;
  bool complex_regime = false;  // A < B: roots complex, positivity not guaranteed
  double c_minus = std::numeric_limits<double>::quiet_NaN();
  double c_plus = std::numeric_limits<double>::quiet_NaN();

  /// Slowest decay rate of homoclinics: sqrt(c_minus) for real roots,
  /// Re sqrt(c) = sqrt((A+B)/2) in the complex regime.
  double decay_rate() const {
    return complex_regime ? std::sqrt(0.5 * (A + B)) : std::sqrt(c_minus);
  }
  double growth_rate() const {
    return complex_regime ? std::sqrt(0.5 * (A + B)) : std::sqrt(c_plus);
  }
};

inline ODECoefficients char_roots(double A, double B, double q = 3.0) {
  if (!(A > 0.0) || !(B > 0.0))
    fail(errc::non_positive_coefficient, "A and B must be positive");
  ODECoefficients c;
  c.A = A;
  c.B = B;
  c.q = q;
  if (A >= B) {
    c.c_plus = A + std::sqrt((A - B) * (A + B));
    c.c_minus = B * B / c.c_plus;
  } else {
    c.complex_regime = true;
  }
  return c;
}

/// Constants of the |x|^alpha-weighted problem.
struct WeightedParams {
  int N = 0;
  double alpha = 0.0;
  double q = 0.0;
  double gamma_N_alpha = 0.0;      // (N-4+alpha)(N-alpha)/4
  double gamma_bar_N_alpha = 0.0;  // ((N-2)/2)^2 + ((alpha-2)/2)^2
  double beta_alpha = 0.0;         // N - q(N-4+alpha)/2
};

inline WeightedParams weighted_params(int N, double alpha, double q) {
  if (N < 2)
    fail(errc::dimension_too_small, "N must be >= 2 for the weighted problem");
  if (!(alpha > 4.0 - N) || alpha == static_cast<double>(N))
    fail(errc::alpha_out_of_range,
         "alpha must satisfy alpha > 4-N and alpha != N");
  WeightedParams w;
  w.N = N;
  w.alpha = alpha;
  w.q = q;
  w.gamma_N_alpha = 0.25 * (N - 4 + alpha) * (N - alpha);
  const double a = 0.5 * (N - 2), b = 0.5 * (alpha - 2);
  w.gamma_bar_N_alpha = a * a + b * b;
  w.beta_alpha = N - q * 0.5 * (N - 4 + alpha);
  return w;
}

/// The lambda(q) on which the radial solution has a closed form.
/// Coefficient (gamma_N + 2)^2 adopted: it is the unique choice for which
/// lambda(2**) = 0; the (gamma_N^2 + 2)^2 variant is rejected by the
/// residual oracle in the closed-form test suite.
inline double special_lambda(int N, double q) {
  if (N < 5) fail(errc::dimension_too_small, "N must be >= 5");
  const double two_ss = 2.0 * N / (N - 4);
  if (!(q > 2.0) || !(q <= two_ss))
    fail(errc::exponent_out_of_range, "need 2 < q <= 2** = " + std::to_string(two_ss));
  const double g = 0.25 * N * (N - 4);
  const double ratio = 4.0 * q / (q * q + 4.0);
  const double a = ratio * (g + 2.0);
  return g * g - a * a;
}

/// Same formula with the rejected (gamma_N^2 + 2)^2 coefficient; kept only
/// so the residual oracle can quantify how badly it fails.
inline double special_lambda_typo_variant(int N, double q) {
  const double g = 0.25 * N * (N - 4);
  const double ratio = 4.0 * q / (q * q + 4.0);
  const double a = ratio * (g * g + 2.0);
  return g * g - a * a;
}

/// Symmetry-breaking thresholds in lambda.
struct BreakingThresholds {
  double lambda_basic = 0.0;  // -(q-1)(N-1)^2/(q-2)^2
  std::optional<double> lambda_improved;
  double q_min_improved = 0.0;  // 2 + 4(N-1)/(N(N-4))
};

inline BreakingThresholds breaking_thresholds(int N, double q) {
  if (N < 5) fail(errc::dimension_too_small, "N must be >= 5");
  const double two_ss = 2.0 * N / (N - 4);
  if (!(q > 2.0) || !(q <= two_ss))
    fail(errc::exponent_out_of_range, "need 2 < q <= 2**");
  BreakingThresholds t;
  const double qm2 = q - 2.0;
  t.lambda_basic = -(q - 1.0) * (N - 1.0) * (N - 1.0) / (qm2 * qm2);
  t.q_min_improved = 2.0 + 4.0 * (N - 1.0) / (static_cast<double>(N) * (N - 4));
  if (q >= t.q_min_improved) {
    const double g = 0.25 * N * (N - 4);
    t.lambda_improved = g * g - (N - 1.0) * (N - 1.0 + 2.0 * g) / qm2;
  }
  return t;
}

}  // namespace rellich
