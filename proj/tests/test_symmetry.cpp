#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>

#include "rellich/rellich.hpp"
#include "oracles.hpp"

using namespace rellich;

namespace {

GroundState wrap_profile(Profile p) {
  GroundState gs;
  gs.profile = std::move(p);
  return gs;
}

}  // namespace

TEST_CASE("X agrees with the radial finite-difference functional") {
  const int N = 8;
  const auto p = derive_problem(N, 3.0, 0.0);
  const auto g = make_grid(14.0, 32769);
  auto w = sample_on(g, [](double s) { return std::exp(-0.45 * s * s); });
  const auto gs = wrap_profile(w);
  const double X = compute_X(gs, p);

  const auto u = ef_inverse(w, N, 0.0);
  const auto nd = oracles::ndim_norms(u, p.beta, 3.0);
  // numerator of X^2 is the lambda-free Dirichlet part, denominator the
  // Hardy-weight L^2 norm; both computed here in N dimensions
  const double X_oracle = std::sqrt(nd.dirichlet / nd.weighted_l2);
  CHECK(X == doctest::Approx(X_oracle).epsilon(1e-5));
}

TEST_CASE("X is invariant under profile scaling") {
  const auto p = derive_problem(5, 3.0, 0.0);
  const auto g = make_grid(10.0, 2049);
  auto w = sample_on(g, [](double s) { return std::exp(-0.5 * s * s); });
  auto gs1 = wrap_profile(w);
  for (double& x : w.values) x *= 37.5;
  auto gs2 = wrap_profile(w);
  CHECK(compute_X(gs1, p) == doctest::Approx(compute_X(gs2, p)).epsilon(1e-12));
}

TEST_CASE("breaking polynomial root at the basic threshold") {
  const int N = 5;
  const double q = 3.0;
  const double n1 = N - 1.0;
  const double lambda_basic = -(q - 1.0) * n1 * n1 / ((q - 2.0) * (q - 2.0));
  CHECK(lambda_basic == doctest::Approx(-32.0));
  const double t_star = n1 / (q - 2.0);
  CHECK(breaking_polynomial(N, q, lambda_basic, t_star) ==
        doctest::Approx(0.0).epsilon(1e-12));
  // g is increasing in t beyond the root and decreasing in lambda
  CHECK(breaking_polynomial(N, q, lambda_basic, t_star + 1.0) > 0.0);
  CHECK(breaking_polynomial(N, q, lambda_basic - 1.0, t_star) > 0.0);
  CHECK(breaking_polynomial(N, q, lambda_basic + 1.0, t_star) < 0.0);
}

TEST_CASE("certificate verdicts at lambda = 0 and lambda = -64") {
  const int N = 5;
  const double q = 3.0;
  SolveOptions opts;

  auto verdict_at = [&](double lambda) {
    const auto p = derive_problem(N, q, lambda);
    const auto c = char_roots(p.A, std::sqrt(p.B2), q);
    const auto g = default_grid(c, 2049);
    auto [gs, rep] = minimize_quotient(c, g, opts);
    REQUIRE(rep.converged);
    return std::make_pair(second_variation_certificate(gs, p), gs.I_value);
  };

  const auto [v0, I0] = verdict_at(0.0);
  CHECK_FALSE(v0.certified_breaking);
  CHECK(v0.g_of_X < 0.0);

  const auto [v64, I64] = verdict_at(-64.0);
  CHECK(v64.certified_breaking);
  CHECK(v64.g_of_X > 0.0);
  CHECK(v64.X == doctest::Approx(3.3289).epsilon(1e-3));
  CHECK(I64 == doctest::Approx(92.6303).epsilon(1e-3));

  // the minimization level grows as lambda decreases
  CHECK(I64 > I0);
}

TEST_CASE("sweep rows follow the lambda grid and carry verdicts") {
  const auto rows = sweep_lambda(5, 3.0, -64.0, 0.0, 2);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].lambda == doctest::Approx(-64.0));
  CHECK(rows[1].lambda == doctest::Approx(0.0));
  for (const auto& r : rows) {
    CHECK(r.ok);
    CHECK(r.failure.empty());
  }
  CHECK(rows[0].certified_breaking);
  CHECK_FALSE(rows[1].certified_breaking);
  CHECK(rows[0].I_value > rows[1].I_value);
}

TEST_CASE("sweep edge cases and per-row failures") {
  CHECK(sweep_lambda(5, 3.0, 0.0, 1.0, 0).empty());
  CHECK_THROWS_WITH_AS(sweep_lambda(5, 3.0, 0.0, 2.0, 3),
                       doctest::Contains("LambdaAboveRellich"), error);
  CHECK_THROWS_WITH_AS(sweep_lambda(5, 3.0, 1.0, 0.0, 3),
                       doctest::Contains("ParameterOutOfRange"), error);

  SolveOptions bad;
  bad.max_iters = 0;
  const auto rows = sweep_lambda(5, 3.0, -4.0, 0.0, 2, bad);
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    CHECK_FALSE(r.ok);
    CHECK(r.failure == "NonConvergence");
    CHECK(r.lambda == r.lambda);  // lambda recorded even on failure
  }
}

TEST_CASE("worker count respects REL_LAB_THREADS and results are deterministic") {
  setenv("REL_LAB_THREADS", "1", 1);
  CHECK(sweep_worker_count(16) == 1);
  const auto serial = sweep_lambda(5, 3.0, -8.0, 0.0, 3);
  unsetenv("REL_LAB_THREADS");
  CHECK(sweep_worker_count(16) >= 1);
  const auto parallel = sweep_lambda(5, 3.0, -8.0, 0.0, 3);
  REQUIRE(serial.size() == parallel.size());
  for (size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].lambda == parallel[i].lambda);
    CHECK(serial[i].I_value == parallel[i].I_value);
    CHECK(serial[i].X == parallel[i].X);
    CHECK(serial[i].certified_breaking == parallel[i].certified_breaking);
  }
}
