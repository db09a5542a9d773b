#pragma once

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "rellich/errors.hpp"
#include "rellich/grid.hpp"
#include "rellich/ground_state.hpp"
#include "rellich/params.hpp"

namespace rellich {

/// X = (int |Delta u|^2 / int |x|^{-4} u^2)^{1/2} for the radial ground
/// state, computed in 1D. Note: the numerator is the pure Rellich quotient,
/// so the zeroth-order coefficient is gamma_N^2 and NOT B^2 = gamma_N^2 -
/// lambda; the state itself still depends on lambda through the solve.
inline double compute_X(const GroundState& gs, const ProblemParams& p) {
  const auto& w = gs.profile;
  const double num =
      quadratic_form(w.grid, 2.0 * (p.gamma_N + 2.0), p.gamma_N * p.gamma_N,
                     std::span<const double>(w.values));
  double den = 0.0;
  for (double x : w.values) den += x * x;
  den *= w.grid.h;
  if (!(den > 0.0))
    fail(errc::zero_denominator, "profile has zero L^2 norm");
  return std::sqrt(num / den);
}

struct SymmetryVerdict {
  double X = 0.0;
  double g_of_X = 0.0;
  bool certified_breaking = false;
  double lambda = 0.0;
  BreakingThresholds thresholds;
};

/// g(t) = (q-2)t^2 - 2(N-1)t - ((N-1)^2 + lambda(q-2)); the radial state
/// can only be a global minimizer if g(X) <= 0, so g(X) > 0 certifies that
/// symmetry breaks.
inline double breaking_polynomial(int N, double q, double lambda, double t) {
  const double n1 = N - 1.0;
  return (q - 2.0) * t * t - 2.0 * n1 * t - (n1 * n1 + lambda * (q - 2.0));
}

inline SymmetryVerdict second_variation_certificate(const GroundState& gs,
                                                    const ProblemParams& p) {
  SymmetryVerdict v;
  v.X = compute_X(gs, p);
  v.g_of_X = breaking_polynomial(p.N, p.q, p.lambda, v.X);
  v.certified_breaking = v.g_of_X > 0.0;
  v.lambda = p.lambda;
  v.thresholds = breaking_thresholds(p.N, p.q);
  return v;
}

struct SweepRecord {
  double lambda = 0.0;
  double I_value = 0.0;
  double X = 0.0;
  double g_of_X = 0.0;
  bool certified_breaking = false;
  bool ok = false;
  std::string failure;  // error name when !ok
};

inline int sweep_worker_count(int rows) {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("REL_LAB_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1 && cap < n) n = cap;
  }
  return std::min(n, std::max(rows, 1));
}

/// One ground-state solve and certificate per lambda on the uniform grid
/// [lambda_min, lambda_max] with `steps` rows. Rows are independent and run
/// on a bounded worker pool; output order follows the lambda grid. Solver
/// failures are recorded per row, not thrown.
inline std::vector<SweepRecord> sweep_lambda(int N, double q,
                                             double lambda_min,
                                             double lambda_max, int steps,
                                             const SolveOptions& opts = {}) {
  if (steps < 0) fail(errc::parameter_out_of_range, "steps must be >= 0");
  if (steps > 1 && !(lambda_max >= lambda_min))
    fail(errc::parameter_out_of_range, "lambda range must be ordered");
  std::vector<double> lambdas(steps);
  for (int i = 0; i < steps; ++i)
    lambdas[i] = steps == 1 ? lambda_min
                            : lambda_min + (lambda_max - lambda_min) * i /
                                               (steps - 1.0);
  for (double l : lambdas) derive_problem(N, q, l);  // validate up front

  std::vector<SweepRecord> rows(steps);
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next.fetch_add(1); i < steps; i = next.fetch_add(1)) {
      SweepRecord& r = rows[i];
      r.lambda = lambdas[i];
      try {
        const ProblemParams p = derive_problem(N, q, lambdas[i]);
        const auto c = char_roots(p.A, std::sqrt(p.B2), q);
        const auto g = default_grid(c, default_grid_points);
        auto [gs, rep] = minimize_quotient(c, g, opts);
        const auto v = second_variation_certificate(gs, p);
        r.I_value = gs.I_value;
        r.X = v.X;
        r.g_of_X = v.g_of_X;
        r.certified_breaking = v.certified_breaking;
        r.ok = true;
      } catch (const error& e) {
        r.failure = errc_name(e.code());
      } catch (const std::exception& e) {
        r.failure = e.what();
      }
    }
  };
  const int workers = sweep_worker_count(steps);
  if (workers <= 1 || steps <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return rows;
}

}  // namespace rellich
