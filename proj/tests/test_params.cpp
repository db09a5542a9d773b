#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rellich/params.hpp"

using namespace rellich;

TEST_CASE("derived constants at N=5, q=3") {
  const auto p = derive_problem(5, 3.0, 0.0);
  CHECK(p.gamma_N == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(p.beta == doctest::Approx(3.5).epsilon(1e-15));
  CHECK(p.A == doctest::Approx(3.25).epsilon(1e-15));
  CHECK(p.B2 == doctest::Approx(1.5625).epsilon(1e-15));
  CHECK(p.two_star_star == doctest::Approx(10.0).epsilon(1e-15));
  // |S^4| = 8 pi^2 / 3
  CHECK(p.omega_N ==
        doctest::Approx(8.0 * pi * pi / 3.0).epsilon(1e-14));
}

TEST_CASE("surface measures for even and odd N") {
  CHECK(sphere_surface_measure(6) ==
        doctest::Approx(std::pow(pi, 3)).epsilon(1e-14));
  CHECK(sphere_surface_measure(8) ==
        doctest::Approx(std::pow(pi, 4) / 3.0).epsilon(1e-14));
}

TEST_CASE("validation errors") {
  CHECK_THROWS_WITH_AS(derive_problem(4, 3.0, 0.0),
                       doctest::Contains("DimensionTooSmall"), error);
  CHECK_THROWS_WITH_AS(derive_problem(5, 2.0, 0.0),
                       doctest::Contains("ExponentOutOfRange"), error);
  CHECK_THROWS_WITH_AS(derive_problem(5, 3.0, 1.5625),
                       doctest::Contains("LambdaAboveRellich"), error);
  CHECK_NOTHROW(derive_problem(5, 3.0, 1.5624));
}

TEST_CASE("characteristic roots") {
  const auto c = char_roots(13.0, 12.0, 3.0);
  CHECK_FALSE(c.complex_regime);
  CHECK(c.c_plus == doctest::Approx(18.0).epsilon(1e-15));
  CHECK(c.c_minus == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(c.c_minus * c.c_plus == doctest::Approx(144.0).epsilon(1e-14));
  CHECK(c.decay_rate() == doctest::Approx(std::sqrt(8.0)).epsilon(1e-15));

  const auto d = char_roots(4.0, 4.0, 3.0);  // double root
  CHECK(d.c_plus == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(d.c_minus == doctest::Approx(4.0).epsilon(1e-15));

  // A < B: complex roots, decay rate sqrt((A+B)/2)
  const auto e = char_roots(3.0, 5.0, 3.0);
  CHECK(e.complex_regime);
  CHECK(e.decay_rate() == doctest::Approx(2.0).epsilon(1e-15));

  CHECK_THROWS_WITH_AS(char_roots(0.0, 1.0, 3.0),
                       doctest::Contains("NonPositiveCoefficient"), error);
}

TEST_CASE("special lambda vanishes at the critical exponent") {
  for (int N = 5; N <= 12; ++N) {
    const double two_ss = 2.0 * N / (N - 4.0);
    CHECK(std::abs(special_lambda(N, two_ss)) < 1e-12);
  }
}

TEST_CASE("special lambda and its misprint differ") {
  // adopted reading: lambda(q) = gamma^2 - (4q/(q^2+4))^2 (gamma+2)^2
  const double g = 1.25;
  const double factor = 12.0 / 13.0;  // 4q/(q^2+4) at q=3
  CHECK(special_lambda(5, 3.0) ==
        doctest::Approx(g * g - factor * factor * (g + 2) * (g + 2))
            .epsilon(1e-14));
  CHECK(special_lambda_typo_variant(5, 3.0) !=
        doctest::Approx(special_lambda(5, 3.0)).epsilon(1e-6));
}

TEST_CASE("breaking thresholds") {
  const auto t = breaking_thresholds(5, 3.0);
  CHECK(t.lambda_basic == doctest::Approx(-32.0).epsilon(1e-15));
  CHECK(t.q_min_improved == doctest::Approx(5.2).epsilon(1e-15));
  CHECK_FALSE(t.lambda_improved.has_value());  // q < q_min

  const auto t6 = breaking_thresholds(5, 6.0);
  REQUIRE(t6.lambda_improved.has_value());
  // gamma^2 - (N-1)(N-1+2 gamma)/(q-2)
  CHECK(*t6.lambda_improved == doctest::Approx(-4.9375).epsilon(1e-15));
}

TEST_CASE("weighted parameters: shift identity and validation") {
  // gamma_bar - gamma = (alpha-2)^2 / 2 on a lattice
  for (int N = 5; N <= 9; ++N)
    for (double alpha : {-0.5, 1.0, 2.0, 3.0}) {
      const auto w = weighted_params(N, alpha, 3.0);
      CHECK(std::abs(w.gamma_bar_N_alpha - w.gamma_N_alpha -
                     0.5 * (alpha - 2) * (alpha - 2)) < 1e-12);
    }
  // alpha = 0 reduces to the unweighted constants
  const auto w0 = weighted_params(5, 0.0, 3.0);
  CHECK(w0.gamma_N_alpha == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(w0.beta_alpha == doctest::Approx(3.5).epsilon(1e-15));

  CHECK_THROWS_WITH_AS(weighted_params(5, -1.5, 3.0),
                       doctest::Contains("AlphaOutOfRange"), error);
  CHECK_THROWS_WITH_AS(weighted_params(5, 5.0, 3.0),
                       doctest::Contains("AlphaOutOfRange"), error);
}
