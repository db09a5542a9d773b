#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rellich/closed_form.hpp"
#include "rellich/emden_fowler.hpp"
#include "rellich/ground_state.hpp"

using namespace rellich;

TEST_CASE("cosh profile constants at A=13, q=3") {
  const auto p = cosh_params(13.0, 3.0);
  CHECK(p.nu * p.nu == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p.C == doctest::Approx(210.0).epsilon(1e-13));
  CHECK(p.B == doctest::Approx(12.0).epsilon(1e-14));
}

TEST_CASE("explicit profile solves the ODE, residual O(h^2)") {
  // long double keeps the h^{-4} roundoff amplification below the
  // truncation error down to M=8193
  const auto c = char_roots(13.0, 12.0, 3.0);
  long double prev = 0.0;
  for (int M : {2049, 4097, 8193}) {
    const auto g = make_grid<long double>(6.0L, M);
    auto [p, w] = explicit_profile<long double>(13.0L, 3.0L, g);
    const long double r = residual(c, 3.0L, w);
    if (prev > 0) {
      CHECK(prev / r > 3.0);
      CHECK(prev / r < 5.0);
    }
    prev = r;
  }
  CHECK(prev < 1e-6L);
}

TEST_CASE("second derivative at the peak") {
  const auto g = make_grid(6.0, 4097);
  auto [p, w] = explicit_profile(13.0, 3.0, g);
  const int c = g.center_index();
  const double w2 =
      (w.values[c - 1] - 2 * w.values[c] + w.values[c + 1]) / (g.h * g.h);
  CHECK(w2 == doctest::Approx(-420.0).epsilon(1e-5));
}

TEST_CASE("explicit radial solution via the 1D reduction") {
  // u on a log mesh transforms to the cosh profile; its ODE residual picks
  // the (gamma_N+2)^2 coefficient in lambda(q) and rejects the misprint
  const int N = 5;
  const double q = 3.0;
  const auto g = make_grid(8.0, 4097);
  const auto rmesh = radial_mesh_for(g);
  const auto u = explicit_radial(N, q, rmesh);
  const auto w = ef_forward(u);

  const double gamma = 1.25;
  const double A = gamma + 2.0;
  const double B_good = std::sqrt(gamma * gamma - special_lambda(N, q));
  const double B_typo = std::sqrt(gamma * gamma - special_lambda_typo_variant(N, q));

  const double r_good = residual(char_roots(A, B_good, q), q, w);
  const double r_typo = residual(char_roots(A, B_typo, q), q, w);
  CHECK(r_good < 1e-5);
  CHECK(r_typo / r_good > 1e3);
}

TEST_CASE("explicit radial validates its arguments") {
  const auto g = make_grid(6.0, 257);
  const auto rmesh = radial_mesh_for(g);
  CHECK_THROWS_WITH_AS(explicit_radial(4, 3.0, rmesh),
                       doctest::Contains("DimensionTooSmall"), error);
  CHECK_THROWS_WITH_AS(explicit_radial(5, 11.0, rmesh),
                       doctest::Contains("ExponentOutOfRange"), error);
}

TEST_CASE("Sobolev extremal shape") {
  const auto g = make_grid(8.0, 257);
  const auto u = sobolev_extremal(5, radial_mesh_for(g));
  for (std::size_t i = 0; i + 1 < u.r.size(); ++i) {
    CHECK(u.u[i] > 0.0);
    CHECK(u.u[i] > u.u[i + 1]);  // strictly decreasing in r
  }
  // value 1 at r -> 0 approached monotonically
  CHECK(u.u.front() == doctest::Approx(1.0).epsilon(1e-3));
}
