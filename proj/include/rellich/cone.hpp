#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "rellich/emden_fowler.hpp"
#include "rellich/errors.hpp"
#include "rellich/params.hpp"

namespace rellich {

// ---------------------------------------------------------------------------
// Hardy / Rellich constants on cones C_Sigma = { r sigma : r > 0, sigma in
// Sigma }, parametrized by the bottom Dirichlet eigenvalue lambda_Sigma of
// the Laplace-Beltrami operator on Sigma.
// ---------------------------------------------------------------------------

enum class ConeLabel { FullSphere, HalfSphere, Custom };

struct ConeSpec {
  int N = 0;
  double lambda_sigma = 0.0;
  ConeLabel label = ConeLabel::Custom;
};

inline ConeSpec full_sphere(int N) {
  if (N < 2) fail(errc::dimension_too_small, "N must be >= 2");
  return {N, 0.0, ConeLabel::FullSphere};
}

inline ConeSpec half_sphere(int N) {
  if (N < 2) fail(errc::dimension_too_small, "N must be >= 2");
  return {N, static_cast<double>(N - 1), ConeLabel::HalfSphere};
}

inline ConeSpec custom_cone(int N, double lambda_sigma) {
  if (N < 2) fail(errc::dimension_too_small, "N must be >= 2");
  if (!(lambda_sigma >= 0.0))
    fail(errc::parameter_out_of_range, "lambda_sigma must be >= 0");
  return {N, lambda_sigma, ConeLabel::Custom};
}

struct ConeConstants {
  double hardy = 0.0;    // ((N-4)/2)^2 + lambda_Sigma
  double rellich = 0.0;  // (gamma_N + lambda_Sigma)^2
};

/// The Rellich constant requires gamma_N + lambda_Sigma > 0; for N <= 4
/// (gamma_N <= 0) that rules out cones whose cross-section is too large.
inline ConeConstants cone_constants(const ConeSpec& spec) {
  if (spec.N < 2) fail(errc::dimension_too_small, "N must be >= 2");
  const double gamma = spec.N * (spec.N - 4.0) / 4.0;
  if (!(gamma + spec.lambda_sigma > 0.0))
    fail(errc::cone_condition_violated,
         "gamma_N + lambda_sigma = " + std::to_string(gamma + spec.lambda_sigma) +
             " must be positive");
  ConeConstants c;
  const double half = (spec.N - 4.0) / 2.0;
  c.hardy = half * half + spec.lambda_sigma;
  c.rellich = (gamma + spec.lambda_sigma) * (gamma + spec.lambda_sigma);
  return c;
}

// ---------------------------------------------------------------------------
// Hardy-quotient verification on separable test functions u = f(r) phi(sigma)
// with phi the first Dirichlet eigenfunction; the quotient reduces to
//   [ int r^{N-3} (|f'|^2 + lambda_Sigma f^2/r^2) dr ] / [ int r^{N-5} f^2 dr ].
// In the log variable s = log r both integrals carry the weight e^{(N-4)s}.
// ---------------------------------------------------------------------------

inline double hardy_quotient(const ConeSpec& spec, const RadialFunction& f) {
  const auto& r = f.r;
  const auto& u = f.u;
  const int n = static_cast<int>(r.size());
  if (n < 7) fail(errc::bad_grid_spec, "need at least 7 mesh points");
  for (int i = 0; i < n; ++i)
    if (!(r[i] > 0.0) || !std::isfinite(u[i]))
      fail(errc::non_integrable_profile, "mesh and values must be finite, r > 0");
  double peak = 0.0;
  for (double v : u) peak = std::max(peak, std::abs(v));
  if (!(peak > 0.0))
    fail(errc::zero_denominator, "profile vanishes identically");
  if (std::abs(u.front()) > 1e-6 * peak || std::abs(u.back()) > 1e-6 * peak)
    fail(errc::non_integrable_profile,
         "profile must be cut off at both mesh ends");

  // log-uniform is assumed by the centered df/ds below
  const double ds = std::log(r[1] / r[0]);
  for (int i = 1; i + 1 < n; ++i)
    if (std::abs(std::log(r[i + 1] / r[i]) - ds) > 1e-9 * std::abs(ds))
      fail(errc::bad_grid_spec, "mesh must be log-uniform");

  double num = 0.0, den = 0.0;
  for (int i = 1; i + 1 < n; ++i) {
    const double wgt = std::pow(r[i], spec.N - 4.0);
    const double dfds = (u[i + 1] - u[i - 1]) / (2.0 * ds);
    num += wgt * (dfds * dfds + spec.lambda_sigma * u[i] * u[i]);
    den += wgt * u[i] * u[i];
  }
  if (!(den > 0.0) || !std::isfinite(num))
    fail(errc::non_integrable_profile, "quotient integrals are not finite");
  return num / den;
}

inline double verify_hardy_samples(const ConeSpec& spec,
                                   std::span<const RadialFunction> profiles) {
  if (profiles.empty())
    fail(errc::parameter_out_of_range, "need at least one profile");
  double m = std::numeric_limits<double>::infinity();
  for (const auto& f : profiles) m = std::min(m, hardy_quotient(spec, f));
  return m;
}

// ---------------------------------------------------------------------------
// D^{1,2} failure: v(x) = (1 + |x|^2)^{(t-N)/4} has Delta v in L^2 but
// infinite Dirichlet energy for t in [2, 4). Partial integrals over balls
// B_R make the dichotomy visible as shell trends.
// ---------------------------------------------------------------------------

struct TailRecord {
  double R = 0.0;
  double grad_integral = 0.0;   // int_{B_R} |grad v|^2
  double bilap_integral = 0.0;  // int_{B_R} |Delta v|^2
};

inline std::vector<TailRecord> counterexample_check(int N, double t,
                                                    std::span<const double> R_list) {
  if (N < 5) fail(errc::dimension_too_small, "N must be >= 5");
  if (!(t >= 2.0) || !(t < 4.0))
    fail(errc::parameter_out_of_range, "t must lie in [2, 4)");
  std::vector<double> Rs(R_list.begin(), R_list.end());
  if (Rs.empty()) return {};
  std::sort(Rs.begin(), Rs.end());
  if (!(Rs.front() > 0.0))
    fail(errc::parameter_out_of_range, "radii must be positive");

  const double p = (t - N) / 4.0;
  const double omega = sphere_surface_measure(N);
  auto dv = [&](double r) {  // v'(r)
    return 2.0 * p * r * std::pow(1.0 + r * r, p - 1.0);
  };
  auto lap = [&](double r) {  // v'' + (N-1)/r v'
    return 2.0 * p * N * std::pow(1.0 + r * r, p - 1.0) +
           4.0 * p * (p - 1.0) * r * r * std::pow(1.0 + r * r, p - 2.0);
  };

  // cumulative trapezoid on a log mesh; the r -> 0 head contributes
  // O(r0^N), negligible at r0 = 1e-8
  const double r0 = 1e-8;
  const int per_decade = 512;
  const double span = std::log10(Rs.back() / r0);
  const int n = std::max(64, static_cast<int>(std::ceil(span * per_decade)));
  const double ds = std::log(Rs.back() / r0) / n;

  std::vector<TailRecord> out;
  out.reserve(Rs.size());
  std::size_t next = 0;
  double grad = 0.0, bil = 0.0;
  double prev_r = r0;
  double prev_g = dv(r0) * dv(r0) * std::pow(r0, N - 1.0);
  double prev_b = lap(r0) * lap(r0) * std::pow(r0, N - 1.0);
  for (int i = 1; i <= n && next < Rs.size(); ++i) {
    double r = r0 * std::exp(i * ds);
    // land exactly on each requested radius
    while (next < Rs.size() && r >= Rs[next]) {
      const double rb = Rs[next];
      const double gg = dv(rb) * dv(rb) * std::pow(rb, N - 1.0);
      const double bb = lap(rb) * lap(rb) * std::pow(rb, N - 1.0);
      const double seg = 0.5 * (rb - prev_r);
      out.push_back({rb, omega * (grad + seg * (prev_g + gg)),
                     omega * (bil + seg * (prev_b + bb))});
      next++;
    }
    const double g = dv(r) * dv(r) * std::pow(r, N - 1.0);
    const double b = lap(r) * lap(r) * std::pow(r, N - 1.0);
    const double seg = 0.5 * (r - prev_r);
    grad += seg * (prev_g + g);
    bil += seg * (prev_b + b);
    prev_r = r;
    prev_g = g;
    prev_b = b;
  }
  while (next < Rs.size()) {  // Rs.back() lands on the final node
    out.push_back({Rs[next], omega * grad, omega * bil});
    next++;
  }
  return out;
}

}  // namespace rellich
