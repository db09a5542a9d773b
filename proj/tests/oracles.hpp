// Test-only oracles: direct N-dimensional radial quadratures, computed in
// the log variable l = log r with centered finite differences. These are
// independent of the 1D transform identities they are used to verify.
#pragma once

#include <cmath>
#include <vector>

#include "rellich/emden_fowler.hpp"
#include "rellich/params.hpp"

namespace oracles {

struct NDimNorms {
  double dirichlet = 0.0;    // int |Delta u|^2 dx
  double weighted_l2 = 0.0;  // int |x|^{-4} u^2 dx
  double weighted_lq = 0.0;  // int |x|^{-beta} |u|^q dx
};

// Radial u on a log-uniform increasing mesh. Delta u = u'' + (N-1)/r u'
// becomes (d^2u/dl^2 + (N-2) du/dl) / r^2 in the log variable.
inline NDimNorms ndim_norms(const rellich::RadialFunction& f, double beta,
                            double q) {
  const int n = static_cast<int>(f.r.size());
  const double dl = std::log(f.r[1] / f.r[0]);
  const double omega = rellich::sphere_surface_measure(f.N);
  NDimNorms out;
  for (int i = 1; i + 1 < n; ++i) {
    const double r = f.r[i], u = f.u[i];
    const double du = (f.u[i + 1] - f.u[i - 1]) / (2.0 * dl);
    const double d2u = (f.u[i + 1] - 2.0 * u + f.u[i - 1]) / (dl * dl);
    const double lap = (d2u + (f.N - 2.0) * du) / (r * r);
    // dx = omega r^{N-1} dr = omega r^N dl
    out.dirichlet += lap * lap * std::pow(r, f.N) * dl;
    out.weighted_l2 += u * u * std::pow(r, f.N - 4.0) * dl;
    out.weighted_lq += std::pow(std::abs(u), q) * std::pow(r, f.N - beta) * dl;
  }
  out.dirichlet *= omega;
  out.weighted_l2 *= omega;
  out.weighted_lq *= omega;
  return out;
}

}  // namespace oracles
