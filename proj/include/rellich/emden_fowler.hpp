#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "rellich/errors.hpp"
#include "rellich/grid.hpp"
#include "rellich/params.hpp"

namespace rellich {

/// Radially symmetric function sampled on a log-uniform mesh r_j = e^{-s_j}.
/// alpha is the weight exponent of the generalized transform (0 for the
/// unweighted problem).
struct RadialFunction {
  std::vector<double> r;  // strictly increasing
  std::vector<double> u;
  int N = 0;
  double alpha = 0.0;
};

/// The log-uniform radial mesh paired with a grid: r_j = e^{-s_j}, stored in
/// increasing r (decreasing s) order.
inline std::vector<double> radial_mesh_for(const Grid& g) {
  std::vector<double> r(g.M);
  for (int i = 0; i < g.M; ++i) r[i] = std::exp(-g.nodes[g.M - 1 - i]);
  return r;
}

/// w(s) = r^{(N-4+alpha)/2} u(r) at r = e^{-s}. The radial mesh must be the
/// exact image of a symmetric grid so the transform is a pure relabeling.
inline Profile ef_forward(const RadialFunction& f) {
  const int M = static_cast<int>(f.r.size());
  if (M < 7 || M % 2 == 0)
    fail(errc::mesh_mismatch, "radial mesh must have odd size >= 7");
  std::vector<double> s(M);
  for (int i = 0; i < M; ++i) {
    if (!(f.r[i] > 0.0)) fail(errc::mesh_mismatch, "radii must be positive");
    s[i] = -std::log(f.r[M - 1 - i]);
  }
  const double h = s[1] - s[0];
  for (int i = 1; i < M; ++i)
    if (std::abs(s[i] - s[i - 1] - h) > 1e-9 * std::max(1.0, std::abs(h)))
      fail(errc::mesh_mismatch, "radial mesh is not log-uniform");
  if (std::abs(s.front() + s.back()) > 1e-9 * std::abs(s.back()))
    fail(errc::mesh_mismatch, "radial mesh is not symmetric about r = 1");
  Profile w;
  w.grid = make_grid(s.back() + h, M);
  const double e = 0.5 * (f.N - 4 + f.alpha);
  for (int i = 0; i < M; ++i) {
    const double r = f.r[M - 1 - i];
    w.values.push_back(std::pow(r, e) * f.u[M - 1 - i]);
  }
  return w;
}

/// u(r) = r^{(4-N-alpha)/2} w(-log r) on r_j = e^{-s_j}.
inline RadialFunction ef_inverse(const Profile& w, int N, double alpha = 0.0) {
  RadialFunction f;
  f.N = N;
  f.alpha = alpha;
  f.r = radial_mesh_for(w.grid);
  f.u.resize(w.grid.M);
  const double e = 0.5 * (4 - N - alpha);
  for (int i = 0; i < w.grid.M; ++i)
    f.u[i] = std::pow(f.r[i], e) * w.values[w.grid.M - 1 - i];
  return f;
}

/// The three 1D quadratures of the transform identities. Multiplied by
/// omega_N they equal the N-dimensional integrals of |Delta u|^2,
/// |x|^{-4} u^2 and |x|^{-beta}|u|^q for u = ef_inverse(w).
struct EFNorms {
  double dirichlet = 0.0;    // int |w''|^2 + 2(gamma_N+2)|w'|^2 + gamma_N^2 |w|^2
  double weighted_l2 = 0.0;  // int |w|^2
  double weighted_lq = 0.0;  // int |w|^q
};

inline constexpr double default_decay_tol = 1e-6;

inline void require_boundary_decay(const Profile& w,
                                   double decay_tol = default_decay_tol) {
  const double m = max_abs(std::span<const double>(w.values));
  if (m == 0.0) return;
  if (std::abs(w.values.front()) > decay_tol * m ||
      std::abs(w.values.back()) > decay_tol * m)
    fail(errc::boundary_decay_violated,
         "profile has not decayed at the grid boundary");
}

inline EFNorms ef_norms(const Profile& w, const ProblemParams& p,
                        double decay_tol = default_decay_tol) {
  require_boundary_decay(w, decay_tol);
  EFNorms n;
  const std::span<const double> v(w.values);
  n.dirichlet = quadratic_form(w.grid, 2.0 * (p.gamma_N + 2.0),
                               p.gamma_N * p.gamma_N, v);
  n.weighted_l2 = 0.0;
  n.weighted_lq = 0.0;
  for (double x : w.values) {
    n.weighted_l2 += x * x;
    n.weighted_lq += std::pow(std::abs(x), p.q);
  }
  n.weighted_l2 *= w.grid.h;
  n.weighted_lq *= w.grid.h;
  return n;
}

/// [ int |w''|^2 + 2A|w'|^2 + B^2|w|^2 ] / ( int |w|^q )^{2/q}.
inline double rayleigh_quotient(const Profile& w, double A, double B2, double q) {
  double lq = 0.0;
  for (double x : w.values) lq += std::pow(std::abs(x), q);
  lq *= w.grid.h;
  if (!(lq > 0.0)) fail(errc::zero_denominator, "profile has zero L^q norm");
  const double num =
      quadratic_form(w.grid, 2.0 * A, B2, std::span<const double>(w.values));
  return num / std::pow(lq, 2.0 / q);
}

inline double rayleigh_quotient(const Profile& w, const ProblemParams& p) {
  return rayleigh_quotient(w, p.A, p.B2, p.q);
}

}  // namespace rellich
