#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "rellich/emden_fowler.hpp"
#include "rellich/errors.hpp"
#include "rellich/grid.hpp"
#include "rellich/params.hpp"

namespace rellich {

/// Parameters of the explicit homoclinic w(s) = C cosh(nu s)^{-4/(q-2)},
/// valid on the curve A/B = (q^2+4)/(4q).
template <class Real = double>
struct CoshProfileParams {
  Real nu = 0;  // nu^2 = (q-2)^2 A / (2(q^2+4))
  Real C = 0;   // C^{q-2} = 2q(q+2)(3q-2) A^2 / (q^2+4)^2
  Real q = 0;
  Real A = 0;
  Real B = 0;  // 4qA/(q^2+4)
};

template <class Real = double>
CoshProfileParams<Real> cosh_params(Real A, Real q) {
  if (!(A > Real(0))) fail(errc::non_positive_coefficient, "A must be positive");
  if (!(q > Real(2))) fail(errc::exponent_out_of_range, "q must exceed 2");
  CoshProfileParams<Real> p;
  p.q = q;
  p.A = A;
  const Real q24 = q * q + 4;
  p.B = 4 * q * A / q24;
  p.nu = std::sqrt((q - 2) * (q - 2) * A / (2 * q24));
  p.C = std::pow(2 * q * (q + 2) * (3 * q - 2) * A * A / (q24 * q24),
                 Real(1) / (q - 2));
  return p;
}

template <class Real = double>
std::pair<CoshProfileParams<Real>, BasicProfile<Real>> explicit_profile(
    Real A, Real q, const BasicGrid<Real>& grid) {
  const auto p = cosh_params(A, q);
  const Real k = 4 / (q - 2);
  auto w = sample_on(grid, [&](Real s) {
    return p.C * std::pow(std::cosh(p.nu * s), -k);
  });
  return {p, std::move(w)};
}

/// The explicit radial solution at lambda = lambda(q):
///   u(r) = Ctilde r^{(4-N)/2 + 4 nu/(q-2)} (1 + r^{2 nu})^{-4/(q-2)}
/// with A = gamma_N + 2 and Ctilde = 2^{4/(q-2)} C derived from the
/// transform of the cosh profile (not hardcoded).
inline RadialFunction explicit_radial(int N, double q,
                                      const std::vector<double>& rmesh) {
  if (N < 5) fail(errc::dimension_too_small, "N must be >= 5");
  const double two_ss = 2.0 * N / (N - 4);
  if (!(q > 2.0) || !(q <= two_ss))
    fail(errc::exponent_out_of_range, "need 2 < q <= 2**");
  const double gamma_N = 0.25 * N * (N - 4);
  const auto p = cosh_params(gamma_N + 2.0, q);
  const double k = 4.0 / (q - 2.0);
  const double Ctilde = std::pow(2.0, k) * p.C;
  const double power = 0.5 * (4 - N) + k * p.nu;
  RadialFunction f;
  f.N = N;
  f.alpha = 0.0;
  f.r = rmesh;
  f.u.reserve(rmesh.size());
  for (double r : rmesh) {
    if (!(r > 0.0)) fail(errc::mesh_mismatch, "radii must be positive");
    f.u.push_back(Ctilde * std::pow(r, power) *
                  std::pow(1.0 + std::pow(r, 2.0 * p.nu), -k));
  }
  return f;
}

/// Extremal of the second-order Sobolev embedding, U(x) = (1+|x|^2)^{(4-N)/2}.
inline RadialFunction sobolev_extremal(int N, const std::vector<double>& rmesh) {
  if (N < 5) fail(errc::dimension_too_small, "N must be >= 5");
  RadialFunction f;
  f.N = N;
  f.alpha = 0.0;
  f.r = rmesh;
  f.u.reserve(rmesh.size());
  for (double r : rmesh)
    f.u.push_back(std::pow(1.0 + r * r, 0.5 * (4 - N)));
  return f;
}

}  // namespace rellich
