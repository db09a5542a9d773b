#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "rellich/closed_form.hpp"
#include "rellich/errors.hpp"
#include "rellich/grid.hpp"
#include "rellich/params.hpp"

namespace rellich {

// ---------------------------------------------------------------------------
// Pentadiagonal SPD solver (LDL^T, bandwidth 2) for the discrete operator
// K = D4 - 2A D2 + B^2 I with clamped zero extension.
// ---------------------------------------------------------------------------

class PentaSolver {
 public:
  PentaSolver(const Grid& g, double A, double B2) : M_(g.M) {
    const double h2 = g.h * g.h, h4 = h2 * h2;
    const double d0 = 6.0 / h4 + 4.0 * A / h2 + B2;
    const double d1 = -4.0 / h4 - 2.0 * A / h2;
    const double d2 = 1.0 / h4;
    D_.resize(M_);
    l1_.assign(M_, 0.0);
    l2_.assign(M_, 0.0);
    for (int i = 0; i < M_; ++i) {
      double l2i = 0.0, l1i = 0.0;
      if (i >= 2) l2i = d2 / D_[i - 2];
      if (i >= 1) l1i = (d1 - (i >= 2 ? l2i * D_[i - 2] * l1_[i - 1] : 0.0)) / D_[i - 1];
      double di = d0;
      if (i >= 1) di -= l1i * l1i * D_[i - 1];
      if (i >= 2) di -= l2i * l2i * D_[i - 2];
      l1_[i] = l1i;
      l2_[i] = l2i;
      D_[i] = di;
    }
  }

  std::vector<double> solve(std::span<const double> b) const {
    std::vector<double> x(b.begin(), b.end());
    for (int i = 1; i < M_; ++i) {
      x[i] -= l1_[i] * x[i - 1];
      if (i >= 2) x[i] -= l2_[i] * x[i - 2];
    }
    for (int i = 0; i < M_; ++i) x[i] /= D_[i];
    for (int i = M_ - 2; i >= 0; --i) {
      x[i] -= l1_[i + 1] * x[i + 1];
      if (i + 2 < M_) x[i] -= l2_[i + 2] * x[i + 2];
    }
    return x;
  }

 private:
  int M_;
  std::vector<double> D_, l1_, l2_;
};

// ---------------------------------------------------------------------------
// Residual, Hamiltonian and shape diagnostics
// ---------------------------------------------------------------------------

/// Max-norm ODE residual |L w - |w|^{q-2} w| over the nodes whose stencil
/// does not touch the boundary extension, normalized by max(1, max|w|^{q-1}).
template <class Real>
Real residual(const ODECoefficients& c, Real q, const BasicProfile<Real>& w) {
  const auto& g = w.grid;
  const Real A = static_cast<Real>(c.A), B2 = static_cast<Real>(c.B * c.B);
  const auto Lw = apply_L(g, A, B2, w);
  Real m = 0, peak = max_abs(std::span<const Real>(w.values));
  for (int i = 2; i < g.M - 2; ++i) {
    const Real x = w.values[i];
    const Real r = Lw.values[i] - std::pow(std::abs(x), q - 2) * x;
    m = std::max(m, std::abs(r));
  }
  return m / std::max(Real(1), std::pow(peak, q - 1));
}

/// Max over interior nodes of the Hamiltonian
///   H = -w''' w' + |w''|^2/2 + A|w'|^2 - B^2|w|^2/2 + |w|^q/q
/// (identically zero along homoclinics), derivatives by centered
/// differences, normalized by max(1, max|w|^q).
template <class Real>
Real hamiltonian_deviation(const BasicProfile<Real>& w, const ODECoefficients& c,
                           Real q) {
  const auto& g = w.grid;
  const Real A = static_cast<Real>(c.A), B2 = static_cast<Real>(c.B * c.B);
  const Real h = g.h;
  Real m = 0, peak = max_abs(std::span<const Real>(w.values));
  for (int i = 2; i < g.M - 2; ++i) {
    const Real wm2 = w.values[i - 2], wm1 = w.values[i - 1], w0 = w.values[i],
               wp1 = w.values[i + 1], wp2 = w.values[i + 2];
    const Real d1 = (wp1 - wm1) / (2 * h);
    const Real d2 = (wm1 - 2 * w0 + wp1) / (h * h);
    const Real d3 = (wp2 - 2 * wp1 + 2 * wm1 - wm2) / (2 * h * h * h);
    const Real H = -d3 * d1 + d2 * d2 / 2 + A * d1 * d1 - B2 * w0 * w0 / 2 +
                   std::pow(std::abs(w0), q) / q;
    m = std::max(m, std::abs(H));
  }
  return m / std::max(Real(1), std::pow(peak, q));
}

/// Sub-grid location of the extremum of |w| by a 3-point parabolic fit
/// around the max node, and the (signed) peak value there.
template <class Real>
std::pair<Real, Real> interpolated_peak(const BasicProfile<Real>& w) {
  const auto& g = w.grid;
  int im = 0;
  for (int i = 1; i < g.M; ++i)
    if (std::abs(w.values[i]) > std::abs(w.values[im])) im = i;
  Real s0 = g.nodes[im], v0 = w.values[im];
  if (im > 0 && im < g.M - 1) {
    const Real ym = std::abs(w.values[im - 1]), y0 = std::abs(w.values[im]),
               yp = std::abs(w.values[im + 1]);
    const Real denom = ym - 2 * y0 + yp;
    if (denom < Real(0)) {
      const Real d = Real(0.5) * (ym - yp) / denom;
      s0 += d * g.h;
      v0 = interpolate(w, s0);
    }
  }
  return {s0, v0};
}

struct ShapeFlags {
  bool is_even = false;
  bool is_positive = false;
  bool is_monotone_halfline = false;
  bool sup_bound_ok = false;
  double center = 0.0;  // interpolated peak location
};

inline constexpr double default_shape_tol = 1e-6;

/// Recenters at the peak of |w|, fixes the sign positive there, and reports
/// the shape flags plus the a-priori sup bound max|w|^{q-2} <= (q/2) B^2.
template <class Real>
ShapeFlags diagnostics(const BasicProfile<Real>& w, const ODECoefficients& c,
                       Real q, Real tol = Real(default_shape_tol)) {
  ShapeFlags f;
  const auto& g = w.grid;
  const auto [s0, v0] = interpolated_peak(w);
  f.center = static_cast<double>(s0);
  const Real sign = (v0 < Real(0)) ? Real(-1) : Real(1);
  const Real peak = std::abs(v0);
  if (peak == Real(0)) return f;

  // Evenness about the interpolated center, cubic interpolation.
  Real even_err = 0;
  const Real span = g.L - std::abs(s0) - 2 * g.h;
  const int n = 256;
  for (int k = 1; k <= n; ++k) {
    const Real t = span * Real(k) / Real(n);
    even_err = std::max(even_err, std::abs(interpolate(w, s0 + t) -
                                           interpolate(w, s0 - t)));
  }
  f.is_even = even_err <= tol * peak;

  Real mn = w.values[0];
  for (Real x : w.values) mn = std::min(mn, sign * x);
  f.is_positive = mn > -tol * peak;

  // One-signed differences away from the center on each half-line.
  bool mono = true;
  for (int i = 0; i + 1 < g.M; ++i) {
    const Real d = sign * (w.values[i + 1] - w.values[i]);
    if (g.nodes[i] >= s0 && d > tol * peak) mono = false;
    if (g.nodes[i + 1] <= s0 && d < -tol * peak) mono = false;
  }
  f.is_monotone_halfline = mono;

  f.sup_bound_ok = std::pow(peak, q - 2) <=
                   Real(0.5) * q * static_cast<Real>(c.B * c.B) * (1 + tol);
  return f;
}

/// Translation/sign/reflection-invariant L-infinity distance between two
/// profiles, relative to the first profile's peak: both are recentered at
/// their interpolated peaks and oriented positive before comparison.
template <class Real>
Real align_distance(const BasicProfile<Real>& a, const BasicProfile<Real>& b) {
  const auto [sa, va] = interpolated_peak(a);
  const auto [sb, vb] = interpolated_peak(b);
  const Real siga = va < Real(0) ? Real(-1) : Real(1);
  const Real sigb = vb < Real(0) ? Real(-1) : Real(1);
  const Real peak = std::abs(va);
  if (peak == Real(0)) return max_abs(std::span<const Real>(b.values));
  const Real span =
      std::min(a.grid.L - std::abs(sa), b.grid.L - std::abs(sb)) - 2 * a.grid.h;
  const int n = 1024;
  Real direct = 0, mirrored = 0;
  for (int k = -n; k <= n; ++k) {
    const Real t = span * Real(k) / Real(n);
    const Real xa = siga * interpolate(a, sa + t);
    direct = std::max(direct, std::abs(xa - sigb * interpolate(b, sb + t)));
    mirrored = std::max(mirrored, std::abs(xa - sigb * interpolate(b, sb - t)));
  }
  return std::min(direct, mirrored) / peak;
}

// ---------------------------------------------------------------------------
// Constrained gradient flow for I(A,B)
// ---------------------------------------------------------------------------

enum class SeedKind { ClosedFormSeed, GaussianSeed, RandomPerturbed };

struct SolveOptions {
  int max_iters = 500;
  double grad_tol = 1e-10;
  double step_init = 1.0;
  double backtrack_factor = 0.5;
  SeedKind init = SeedKind::GaussianSeed;
  std::uint64_t seed = 0;  // rng seed for RandomPerturbed
  bool enforce_even = false;
};

struct GroundState {
  Profile profile;  // rescaled so it solves the ODE, not just the quotient
  double I_value = 0.0;
  double residual_linf = 0.0;
  double hamiltonian_dev = 0.0;
  bool is_even = false;
  bool is_positive = false;
  bool is_monotone_halfline = false;
  bool sup_bound_ok = false;
  bool positivity_guaranteed = false;  // A >= B regime
};

struct SolveReport {
  int iterations = 0;
  double final_grad_norm = 0.0;
  bool converged = false;
  std::vector<double> energy_history;
};

inline Profile make_seed(const ODECoefficients& c, const Grid& g,
                         const SolveOptions& opts) {
  switch (opts.init) {
    case SeedKind::ClosedFormSeed:
      return explicit_profile(c.A, c.q, g).second;
    case SeedKind::GaussianSeed:
      return sample_on(g, [](double s) { return std::exp(-0.5 * s * s); });
    case SeedKind::RandomPerturbed: {
      std::mt19937_64 rng(opts.seed);
      std::uniform_real_distribution<double> uni(0.0, 1.0);
      const double width = 0.7 + 1.2 * uni(rng);
      const double center = -2.0 + 4.0 * uni(rng);
      std::array<double, 3> amp{}, pos{}, wid{};
      for (int k = 0; k < 3; ++k) {
        amp[k] = -0.3 + 0.6 * uni(rng);
        pos[k] = -3.0 + 6.0 * uni(rng);
        wid[k] = 0.5 + uni(rng);
      }
      return sample_on(g, [&](double s) {
        double v = std::exp(-0.5 * (s - center) * (s - center) / (width * width));
        for (int k = 0; k < 3; ++k) {
          const double z = (s - pos[k]) / wid[k];
          v += amp[k] * std::exp(-0.5 * z * z);
        }
        return v;
      });
    }
  }
  fail(errc::parameter_out_of_range, "unknown seed kind");
}

namespace detail {

inline double lq_norm(const Grid& g, std::span<const double> w, double q) {
  double s = 0.0;
  for (double x : w) s += std::pow(std::abs(x), q);
  return std::pow(g.h * s, 1.0 / q);
}

inline void symmetrize(std::vector<double>& w) {
  const int M = static_cast<int>(w.size());
  for (int i = 0; i < M / 2; ++i) {
    const double v = 0.5 * (w[i] + w[M - 1 - i]);
    w[i] = v;
    w[M - 1 - i] = v;
  }
}

}  // namespace detail

/// Gradient flow on the constraint manifold { int |w|^q = 1 }: each step
/// moves along the K-preconditioned negative form-gradient, renormalizes the
/// L^q constraint and backtracks until the quotient decreases; terminates
/// when the preconditioned gradient norm drops below grad_tol.
inline std::pair<GroundState, SolveReport> minimize_quotient(
    const ODECoefficients& c, const Grid& grid, const SolveOptions& opts = {}) {
  const double A = c.A, B2 = c.B * c.B, q = c.q;
  const PentaSolver solver(grid, A, B2);

  Profile w = make_seed(c, grid, opts);
  if (opts.enforce_even) detail::symmetrize(w.values);
  {
    const double n = detail::lq_norm(grid, w.values, q);
    if (!(n > 0.0)) fail(errc::degenerate_profile, "seed has zero L^q norm");
    for (double& x : w.values) x /= n;
  }

  auto energy = [&](const Profile& p) {
    const auto Kp = apply_L(grid, A, B2, p);
    double e = 0.0;
    for (int i = 0; i < grid.M; ++i) e += p.values[i] * Kp.values[i];
    return grid.h * e;
  };

  SolveReport rep;
  double N = energy(w);
  rep.energy_history.push_back(N);
  double grad_norm = std::numeric_limits<double>::infinity();

  for (int it = 0; it < opts.max_iters; ++it) {
    const auto Kw = apply_L(grid, A, B2, w);
    double mu = 0.0;
    for (int i = 0; i < grid.M; ++i) mu += w.values[i] * Kw.values[i];
    mu *= grid.h;
    if (!std::isfinite(mu) || !(mu > 0.0))
      fail(errc::degenerate_profile, "quotient lost positivity");

    std::vector<double> g(grid.M);
    for (int i = 0; i < grid.M; ++i) {
      const double x = w.values[i];
      g[i] = Kw.values[i] - mu * std::pow(std::abs(x), q - 2) * x;
    }
    const auto d = solver.solve(g);
    double gd = 0.0;
    for (int i = 0; i < grid.M; ++i) gd += g[i] * d[i];
    grad_norm = gd > 0.0 ? std::sqrt(grid.h * gd / mu) : 0.0;
    rep.iterations = it;
    if (grad_norm < opts.grad_tol) {
      rep.converged = true;
      break;
    }

    double tau = opts.step_init;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      Profile trial;
      trial.grid = grid;
      trial.values.resize(grid.M);
      for (int i = 0; i < grid.M; ++i)
        trial.values[i] = w.values[i] - tau * d[i];
      if (opts.enforce_even) detail::symmetrize(trial.values);
      const double n = detail::lq_norm(grid, trial.values, q);
      if (n > 0.0) {
        for (double& x : trial.values) x /= n;
        const double Nt = energy(trial);
        // decrease up to the cancellation floor of the energy evaluation;
        // near the minimum the full step is the contraction
        // w <- normalize(K^{-1} mu |w|^{q-2} w) and must stay accepted
        if (std::isfinite(Nt) && Nt < N + 1e-9 * std::abs(N)) {
          w = std::move(trial);
          N = Nt;
          accepted = true;
          break;
        }
      }
      tau *= opts.backtrack_factor;
    }
    rep.energy_history.push_back(N);
    if (!accepted) break;  // stalled at the roundoff floor
  }
  rep.final_grad_norm = grad_norm;
  if (!rep.converged) {
    // A stall with a small preconditioned gradient is convergence in all but
    // name; anything else is a genuine failure.
    if (grad_norm < 1e-6)
      rep.converged = true;
    else
      fail(errc::non_convergence,
           "gradient flow stalled at grad_norm = " + std::to_string(grad_norm));
  }

  GroundState gs;
  gs.I_value = N;
  gs.positivity_guaranteed = !c.complex_regime;
  gs.profile = w;
  const double scale = std::pow(N, 1.0 / (q - 2.0));
  for (double& x : gs.profile.values) x *= scale;  // now solves the ODE
  gs.residual_linf = residual(c, q, gs.profile);
  gs.hamiltonian_dev = hamiltonian_deviation(gs.profile, c, q);
  const auto flags = diagnostics(gs.profile, c, q);
  gs.is_even = flags.is_even;
  gs.is_positive = flags.is_positive;
  gs.is_monotone_halfline = flags.is_monotone_halfline;
  gs.sup_bound_ok = flags.sup_bound_ok;
  return {gs, rep};
}

// ---------------------------------------------------------------------------
// Shooting: independent verification by Newton on the growing-mode
// coefficients of the half-line initial value problem.
// ---------------------------------------------------------------------------

struct ShootOptions {
  double dt = 0.002;            // RK4 step
  int newton_max = 50;
  double tol_rel = 1e-9;        // Newton target on the growing-mode amplitude
  double accept_tol = 1e-5;     // stage accept threshold (relative): the
                                // growing-mode amplitude bounds the profile
                                // contamination, so this caps the final error
  double continuation_factor = 1.15;
  bool linear_mode = false;     // drop the nonlinearity (trivial-target check)
  std::optional<double> w0_init;  // default: cosh-profile values at A, q
  std::optional<double> w2_init;
};

namespace detail {

struct ShootState {
  std::array<double, 4> y;  // w, w', w'', w'''
};

inline std::array<double, 4> shoot_rhs(const std::array<double, 4>& y, double A,
                                       double B2, double q,
                                       bool linear = false) {
  const double nl = linear ? 0.0 : std::pow(std::abs(y[0]), q - 2) * y[0];
  return {y[1], y[2], y[3], 2.0 * A * y[2] - B2 * y[0] + nl};
}

/// RK4 from s=0 with w'(0)=w'''(0)=0; returns false if the trajectory
/// leaves |y| <= cap before reaching S.
inline bool integrate_halfline(double w0, double w2, double A, double B2,
                               double q, double S, double dt, double cap,
                               std::array<double, 4>& out,
                               std::vector<double>* trace = nullptr,
                               bool linear = false) {
  const int n = std::max(8, static_cast<int>(std::lround(S / dt)));
  const double h = S / n;
  std::array<double, 4> y{w0, 0.0, w2, 0.0};
  if (trace) {
    trace->clear();
    trace->push_back(y[0]);
  }
  for (int i = 0; i < n; ++i) {
    const auto k1 = shoot_rhs(y, A, B2, q, linear);
    std::array<double, 4> t;
    for (int j = 0; j < 4; ++j) t[j] = y[j] + 0.5 * h * k1[j];
    const auto k2 = shoot_rhs(t, A, B2, q, linear);
    for (int j = 0; j < 4; ++j) t[j] = y[j] + 0.5 * h * k2[j];
    const auto k3 = shoot_rhs(t, A, B2, q, linear);
    for (int j = 0; j < 4; ++j) t[j] = y[j] + h * k3[j];
    const auto k4 = shoot_rhs(t, A, B2, q, linear);
    for (int j = 0; j < 4; ++j)
      y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    for (double v : y)
      if (!std::isfinite(v) || std::abs(v) > cap) return false;
    if (trace) trace->push_back(y[0]);
  }
  out = y;
  return true;
}

/// Coefficients of the two growing modes in the state y, from the 4x4
/// Vandermonde-type system in the characteristic rates +-sqrt(c_+-).
/// The double root A = B uses the Jordan-chain basis.
inline std::array<double, 2> growing_coefficients(const std::array<double, 4>& y,
                                                  const ODECoefficients& c) {
  const double rm = std::sqrt(c.c_minus), rp = std::sqrt(c.c_plus);
  std::array<std::array<double, 4>, 4> V{};
  if (rp - rm > 1e-9 * rp) {
    const std::array<double, 4> rates{-rp, -rm, rm, rp};
    for (int k = 0; k < 4; ++k)
      for (int j = 0; j < 4; ++j) V[k][j] = std::pow(rates[j], k);
  } else {
    const double r = rm;  // modes e^{+-rs}, s e^{+-rs}
    V = {{{1, 0, 1, 0},
          {-r, 1, r, 1},
          {r * r, -2 * r, r * r, 2 * r},
          {-r * r * r, 3 * r * r, r * r * r, 3 * r * r}}};
  }
  // Gaussian elimination with partial pivoting on the 4x4 system V a = y.
  std::array<double, 4> b = y;
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r2 = col + 1; r2 < 4; ++r2)
      if (std::abs(V[r2][col]) > std::abs(V[piv][col])) piv = r2;
    std::swap(V[col], V[piv]);
    std::swap(b[col], b[piv]);
    for (int r2 = col + 1; r2 < 4; ++r2) {
      const double f = V[r2][col] / V[col][col];
      for (int c2 = col; c2 < 4; ++c2) V[r2][c2] -= f * V[col][c2];
      b[r2] -= f * b[col];
    }
  }
  for (int row = 3; row >= 0; --row) {
    for (int c2 = row + 1; c2 < 4; ++c2) b[row] -= V[row][c2] * b[c2];
    b[row] /= V[row][row];
  }
  return {b[2], b[3]};
}

}  // namespace detail

/// Even-symmetry shooting: Newton on (w(0), w''(0)) so that the projection
/// of the state at S onto the growing modes e^{+sqrt(c_+-) s} vanishes.
/// Continuation grows S from a short first leg; the achievable matching
/// length is capped near 22/sqrt(c_+), beyond which the e^{sqrt(c_+) S}
/// amplification of one ulp in the unknowns swamps the matching condition.
/// Returns the symmetrized profile on the final matching interval.
inline Profile shoot(const ODECoefficients& c, double q, double domain_S,
                     const ShootOptions& opts = {}) {
  if (c.complex_regime)
    fail(errc::parameter_out_of_range,
         "shooting requires real characteristic roots (A >= B)");
  const double A = c.A, B2 = c.B * c.B;

  double w0, w2;
  if (opts.w0_init && opts.w2_init) {
    w0 = *opts.w0_init;
    w2 = *opts.w2_init;
  } else {
    const auto p = cosh_params(A, q);  // seed shape; B off-curve is fine
    w0 = p.C;
    w2 = -p.C * (4.0 / (q - 2.0)) * p.nu * p.nu;
  }
  const double cap = 1e8 * std::max(1.0, std::abs(w0));
  const double scale0 = std::max(1.0, std::abs(w0));
  const double rate = c.growth_rate();
  const double S_cap = std::min(domain_S, 22.0 / rate);

  auto eval = [&](double a, double b, double S,
                  std::array<double, 2>& F) -> bool {
    std::array<double, 4> y;
    if (!detail::integrate_halfline(a, b, A, B2, q, S, opts.dt, cap, y,
                                    nullptr, opts.linear_mode))
      return false;
    F = detail::growing_coefficients(y, c);
    return true;
  };
  // Newton at fixed S with damped line search on |F|; incomplete
  // integrations count as line-search failures. Runs until the target is
  // met or progress stops; the caller judges the reached value.
  auto newton_at = [&](double S, double& a, double& b) -> double {
    std::array<double, 2> F;
    if (!eval(a, b, S, F)) return std::numeric_limits<double>::infinity();
    double nf = std::hypot(F[0], F[1]);
    for (int it = 0; it < opts.newton_max; ++it) {
      if (nf <= opts.tol_rel * scale0) break;
      const double e0 = 1e-7 * std::max(1.0, std::abs(a));
      const double e2 = 1e-7 * std::max(1.0, std::abs(b));
      std::array<double, 2> Fa, Fb;
      if (!eval(a + e0, b, S, Fa) || !eval(a, b + e2, S, Fb)) break;
      const double J00 = (Fa[0] - F[0]) / e0, J01 = (Fb[0] - F[0]) / e2;
      const double J10 = (Fa[1] - F[1]) / e0, J11 = (Fb[1] - F[1]) / e2;
      const double det = J00 * J11 - J01 * J10;
      if (det == 0.0) break;
      const double dx0 = (J11 * F[0] - J01 * F[1]) / det;
      const double dx2 = (-J10 * F[0] + J00 * F[1]) / det;
      double t = 1.0;
      bool ok = false;
      for (int ls = 0; ls < 50; ++ls) {
        std::array<double, 2> Ft;
        if (eval(a - t * dx0, b - t * dx2, S, Ft)) {
          const double nft = std::hypot(Ft[0], Ft[1]);
          if (nft < nf) {
            a -= t * dx0;
            b -= t * dx2;
            F = Ft;
            nf = nft;
            ok = true;
            break;
          }
        }
        t *= 0.5;
      }
      if (!ok) break;
    }
    return nf;
  };
  const double accept = opts.accept_tol * scale0;

  // Continuation: Newton at growing S refines (w0, w2) even after the
  // matching residual stalls on integration-error contamination, so keep
  // going while it makes progress; the profile is cut at the largest S
  // whose residual met the acceptance threshold (which bounds the
  // contamination of the returned trajectory).
  double S = std::min(S_cap, std::max(3.0 / rate, 0.8));
  if (!(newton_at(S, w0, w2) <= accept))
    fail(errc::newton_divergence, "shooting Newton failed on the first leg");
  double S_good = S;
  while (S < S_cap - 1e-12) {
    S = std::min(S_cap, S * opts.continuation_factor);
    const double a = w0, b = w2;
    const double nf = newton_at(S, w0, w2);
    if (!std::isfinite(nf) || nf > 0.3 * scale0) {
      w0 = a;
      w2 = b;
      break;
    }
    if (nf <= accept) S_good = S;
  }
  S = S_good;

  // Rebuild the trajectory at grid resolution and mirror it.
  const int n_half = std::max(8, static_cast<int>(std::lround(S / opts.dt)));
  const int M = 2 * n_half - 1;  // node at 0, boundary nodes excluded
  Profile p;
  p.grid = make_grid(S, M);
  std::vector<double> trace;
  std::array<double, 4> yend;
  if (!detail::integrate_halfline(w0, w2, A, B2, q, S, S / n_half, cap, yend,
                                  &trace, opts.linear_mode))
    fail(errc::newton_divergence, "converged trajectory failed to re-integrate");
  p.values.assign(M, 0.0);
  const int ctr = p.grid.center_index();
  for (int k = 0; k < n_half; ++k) {
    p.values[ctr + k] = trace[k];
    p.values[ctr - k] = trace[k];
  }
  return p;
}

}  // namespace rellich
