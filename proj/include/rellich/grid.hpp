#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rellich/errors.hpp"
#include "rellich/params.hpp"

namespace rellich {

/// Uniform symmetric grid of M interior nodes on (-L, L), h = 2L/(M+1).
/// M is odd so that s = 0 is a node.
template <class Real = double>
struct BasicGrid {
  Real L = 0;
  int M = 0;
  Real h = 0;
  std::vector<Real> nodes;

  int center_index() const { return (M - 1) / 2; }
  bool same_as(const BasicGrid& other) const {
    return M == other.M && L == other.L;
  }
};

using Grid = BasicGrid<double>;

template <class Real = double>
BasicGrid<Real> make_grid(Real L, int M) {
  if (!(L > Real(0))) fail(errc::bad_grid_spec, "half-width L must be positive");
  if (M < 7 || M % 2 == 0)
    fail(errc::bad_grid_spec, "M must be odd and >= 7, got " + std::to_string(M));
  BasicGrid<Real> g;
  g.L = L;
  g.M = M;
  g.h = Real(2) * L / Real(M + 1);
  g.nodes.resize(M);
  const int c = (M - 1) / 2;
  for (int i = 0; i < M; ++i) g.nodes[i] = Real(i - c) * g.h;  // exact symmetry
  return g;
}

/// Sampled candidate homoclinic on a grid. Value type; the grid is carried
/// by value so profiles are freely copyable and shareable across threads.
template <class Real = double>
struct BasicProfile {
  BasicGrid<Real> grid;
  std::vector<Real> values;
};

using Profile = BasicProfile<double>;

template <class Real, class F>
BasicProfile<Real> sample_on(const BasicGrid<Real>& g, F&& f) {
  BasicProfile<Real> p;
  p.grid = g;
  p.values.resize(g.M);
  for (int i = 0; i < g.M; ++i) p.values[i] = f(g.nodes[i]);
  return p;
}

template <class Real>
Real max_abs(std::span<const Real> v) {
  Real m = 0;
  for (Real x : v) m = std::max(m, std::abs(x));
  return m;
}

/// L w = w'''' - 2A w'' + B^2 w with the 5-point fourth-derivative and
/// 3-point second-derivative stencils; w is extended by zero beyond +-L.
template <class Real>
BasicProfile<Real> apply_L(const BasicGrid<Real>& g, Real A, Real B2,
                           const BasicProfile<Real>& w) {
  if (!w.grid.same_as(g)) fail(errc::grid_mismatch, "profile not on this grid");
  const int M = g.M;
  const Real h2 = g.h * g.h, h4 = h2 * h2;
  BasicProfile<Real> out;
  out.grid = g;
  out.values.resize(M);
  auto at = [&](int i) -> Real {
    return (i < 0 || i >= M) ? Real(0) : w.values[i];
  };
  for (int i = 0; i < M; ++i) {
    const Real wm2 = at(i - 2), wm1 = at(i - 1), w0 = w.values[i],
               wp1 = at(i + 1), wp2 = at(i + 2);
    const Real d4 = (wm2 - 4 * wm1 + 6 * w0 - 4 * wp1 + wp2) / h4;
    const Real d2 = (wm1 - 2 * w0 + wp1) / h2;
    out.values[i] = d4 - 2 * A * d2 + B2 * w0;
  }
  return out;
}

/// Trapezoidal rule with implicit zero boundary values: h * sum(f_i).
template <class Real>
Real quadrature(const BasicGrid<Real>& g, std::span<const Real> f) {
  if (static_cast<int>(f.size()) != g.M)
    fail(errc::grid_mismatch, "sample count does not match grid");
  Real s = 0;
  for (Real x : f) s += x;
  return g.h * s;
}

template <class Real>
Real quadrature(const BasicGrid<Real>& g, const BasicProfile<Real>& p) {
  if (!p.grid.same_as(g)) fail(errc::grid_mismatch, "profile not on this grid");
  return quadrature<Real>(g, std::span<const Real>(p.values));
}

/// Discrete H^2-type quadratic form
///   h * ( sum |D2 w|^2 + a sum |D1 w|^2 + b sum |w|^2 )
/// with the matched forward/second difference operators and zero extension.
/// For decaying profiles this equals quadrature(w * apply_L(w)) with
/// a = 2A, b = B^2 up to an O(boundary^2) term.
template <class Real>
Real quadratic_form(const BasicGrid<Real>& g, Real a, Real b,
                    std::span<const Real> w) {
  if (static_cast<int>(w.size()) != g.M)
    fail(errc::grid_mismatch, "sample count does not match grid");
  const int M = g.M;
  const Real h2 = g.h * g.h;
  auto at = [&](int i) -> Real { return (i < 0 || i >= M) ? Real(0) : w[i]; };
  Real s2 = 0, s1 = 0, s0 = 0;
  for (int i = 0; i < M; ++i) {
    const Real d2 = (at(i - 1) - 2 * w[i] + at(i + 1)) / h2;
    s2 += d2 * d2;
    s0 += w[i] * w[i];
  }
  for (int i = 0; i <= M; ++i) {  // M+1 forward differences
    const Real d1 = (at(i) - at(i - 1)) / g.h;
    s1 += d1 * d1;
  }
  return g.h * (s2 + a * s1 + b * s0);
}

/// Cubic (4-point Lagrange) interpolation of a profile at arbitrary s,
/// zero outside the grid.
template <class Real>
Real interpolate(const BasicProfile<Real>& p, Real s) {
  const auto& g = p.grid;
  const Real x = (s + g.L) / g.h - Real(1);  // fractional node index
  if (x < Real(-1) || x > Real(g.M)) return Real(0);
  int i1 = static_cast<int>(std::floor(x));
  i1 = std::clamp(i1, 1, g.M - 3);
  const Real t = x - Real(i1);
  auto at = [&](int i) -> Real {
    return (i < 0 || i >= g.M) ? Real(0) : p.values[i];
  };
  const Real y0 = at(i1 - 1), y1 = at(i1), y2 = at(i1 + 1), y3 = at(i1 + 2);
  // Lagrange basis on t in [0,1] with nodes -1,0,1,2
  const Real l0 = -t * (t - 1) * (t - 2) / Real(6);
  const Real l1 = (t + 1) * (t - 1) * (t - 2) / Real(2);
  const Real l2 = -(t + 1) * t * (t - 2) / Real(2);
  const Real l3 = (t + 1) * t * (t - 1) / Real(6);
  return l0 * y0 + l1 * y1 + l2 * y2 + l3 * y3;
}

/// Default truncation half-width: the homoclinic decays like
/// exp(-decay_rate * |s|), so 30/rate puts the boundary below 1e-12 of the
/// peak; never smaller than 20.
inline double default_half_width(const ODECoefficients& c) {
  return std::max(30.0 / c.decay_rate(), 20.0);
}

inline constexpr int default_grid_points = 4097;

inline Grid default_grid(const ODECoefficients& c, int M = default_grid_points) {
  return make_grid(default_half_width(c), M);
}

}  // namespace rellich
