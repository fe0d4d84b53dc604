#pragma once

#include "saddle/grid.hpp"

namespace saddle::oracle {

/// Energy of the positive solution of -u'' = u^3 on (0, 1), u(0) = u(1) = 0,
/// by shooting: u(x) = X phi(X x) with phi'' = -phi^3, phi(0) = 0,
/// phi'(0) = 1 and X the first zero of phi, so
///   E = 1/4 int u^4 = X^3/4 int_0^X phi^4.
double lane_emden_1d_energy();

struct RayPeak {
  double t;
  double energy;
};

/// Peak of E(t v) = t^2/2 - t^(gamma+1) I/(gamma+1) for the Dirichlet problem
/// with f = |x|^ell |u|^(gamma-1) u and lumped quadrature, where
/// I = sum over interior nodes of cell_volume |x|^ell |v|^(gamma+1).
RayPeak ray_peak(const GridFunction& v, double ell, double gamma);

}  // namespace saddle::oracle
