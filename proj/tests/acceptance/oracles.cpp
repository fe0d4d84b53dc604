#include "oracles.hpp"

#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>

namespace saddle::oracle {

namespace {

// (phi, phi', int_0^s phi^4)
using State = std::array<double, 3>;

void rhs(const State& y, State& dy, double) {
  dy[0] = y[1];
  dy[1] = -y[0] * y[0] * y[0];
  dy[2] = std::pow(y[0], 4);
}

}  // namespace

double lane_emden_1d_energy() {
  boost::numeric::odeint::runge_kutta4<State> rk4;
  const double h = 1e-4;
  State y{0.0, 1.0, 0.0};
  double s = 0.0;
  for (;;) {
    State next = y;
    rk4.do_step(rhs, next, s, h);
    if (next[0] <= 0.0 && s > 0.0) break;
    y = next;
    s += h;
  }
  // Newton on the partial step: phi(s + d) = 0 with phi' from the state.
  double d = -y[0] / y[1];
  State end = y;
  for (int it = 0; it < 20; ++it) {
    end = y;
    rk4.do_step(rhs, end, s, d);
    const double step = end[0] / end[1];
    d -= step;
    if (std::abs(step) < 1e-15) break;
  }
  end = y;
  rk4.do_step(rhs, end, s, d);
  const double X = s + d;
  return X * X * X / 4.0 * end[2];
}

RayPeak ray_peak(const GridFunction& v, double ell, double gamma) {
  const GridSpec& g = v.grid();
  const double volume = g.dim() == 1 ? g.hx() : g.hx() * g.hy();
  long double I = 0.0L;
  for (std::size_t k = 0; k < g.node_count(); ++k) {
    if (g.on_boundary(k)) continue;
    const Point p = g.node(k);
    const double r = g.dim() == 1 ? std::abs(p.x) : std::hypot(p.x, p.y);
    I += volume * std::pow(static_cast<long double>(r), ell) * std::pow(std::abs(static_cast<long double>(v[k])), gamma + 1);
  }
  const long double t = std::pow(I, -1.0L / (gamma - 1));
  const long double energy = (0.5L - 1.0L / (gamma + 1)) * t * t;
  return {static_cast<double>(t), static_cast<double>(energy)};
}

}  // namespace saddle::oracle
