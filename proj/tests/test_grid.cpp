#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rellich/grid.hpp"

using namespace rellich;

TEST_CASE("grid construction and validation") {
  const auto g = make_grid(10.0, 101);
  CHECK(g.h == doctest::Approx(20.0 / 102).epsilon(1e-15));
  CHECK(g.nodes.size() == 101);
  // exact antisymmetry of the nodes
  for (int i = 0; i < g.M; ++i) CHECK(g.nodes[i] + g.nodes[g.M - 1 - i] == 0.0);
  CHECK(g.nodes[g.center_index()] == 0.0);

  CHECK_THROWS_WITH_AS(make_grid(10.0, 100),
                       doctest::Contains("BadGridSpec"), error);
  CHECK_THROWS_WITH_AS(make_grid(10.0, 5), doctest::Contains("BadGridSpec"),
                       error);
  CHECK_THROWS_WITH_AS(make_grid(-1.0, 101), doctest::Contains("BadGridSpec"),
                       error);
}

TEST_CASE("apply_L is exact on interior quadratics") {
  const auto g = make_grid(5.0, 201);
  const double A = 2.0, B2 = 9.0;
  auto w = sample_on(g, [](double s) { return s * s; });
  const auto Lw = apply_L(g, A, B2, w);
  // D4 s^2 = 0, D2 s^2 = 2 exactly away from the boundary clamp
  for (int i = 2; i < g.M - 2; ++i) {
    const double s = g.nodes[i];
    CHECK(Lw.values[i] ==
          doctest::Approx(-2.0 * A * 2.0 + B2 * s * s).epsilon(1e-9));
  }
}

TEST_CASE("apply_L rejects mismatched grids") {
  const auto g1 = make_grid(5.0, 201);
  const auto g2 = make_grid(5.0, 203);
  auto w = sample_on(g2, [](double s) { return std::exp(-s * s); });
  CHECK_THROWS_WITH_AS(apply_L(g1, 1.0, 1.0, w),
                       doctest::Contains("GridMismatch"), error);
}

TEST_CASE("quadrature of a Gaussian") {
  const auto g = make_grid(12.0, 2001);
  auto w = sample_on(g, [](double s) { return std::exp(-s * s); });
  CHECK(quadrature(g, w) ==
        doctest::Approx(std::sqrt(pi)).epsilon(1e-10));
}

TEST_CASE("quadratic form matches h w.Kw for decayed profiles") {
  const auto g = make_grid(12.0, 1001);
  const double A = 3.0, B2 = 4.0;
  auto w = sample_on(g, [](double s) { return std::exp(-0.5 * s * s); });
  const auto Lw = apply_L(g, A, B2, w);
  double e = 0.0;
  for (int i = 0; i < g.M; ++i) e += w.values[i] * Lw.values[i];
  e *= g.h;
  const double qf =
      quadratic_form(g, 2.0 * A, B2, std::span<const double>(w.values));
  CHECK(qf == doctest::Approx(e).epsilon(1e-10));
}

TEST_CASE("cubic interpolation") {
  const auto g = make_grid(4.0, 401);
  auto w = sample_on(g, [](double s) { return s * s * s - 2 * s + 1; });
  // exact on cubics inside the stencil-covered window
  for (double s : {-3.1, -0.77, 0.0, 0.5, 2.9})
    CHECK(interpolate(w, s) ==
          doctest::Approx(s * s * s - 2 * s + 1).epsilon(1e-10));
  // zero beyond the grid
  CHECK(interpolate(w, 5.0) == 0.0);
}

TEST_CASE("default grid sizes from the decay rate") {
  const auto c = char_roots(13.0, 12.0, 3.0);
  CHECK(default_half_width(c) == doctest::Approx(20.0));  // 30/2.83 < 20
  const auto slow = char_roots(1.0, 0.75, 3.0);
  CHECK(default_half_width(slow) ==
        doctest::Approx(30.0 / slow.decay_rate()).epsilon(1e-12));
}
