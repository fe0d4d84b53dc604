#include "saddle/peak.hpp"

#include "saddle/error.hpp"

#include <Eigen/Cholesky>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace saddle {

namespace {

/// E(t v + sum c_i u_i) as a function of x = (t, c) on [L, v]:
///   E(x) = 1/2 x^T Gamma x - potential(B x)
/// with Gamma the Gram matrix of (v, u_1, ..) and B their restriction to the
/// nodes carrying the nonlinearity.
class RayObjective {
 public:
  RayObjective(const Problem& P, const SupportSpace& L, const GridFunction& v) : term_(P.nonlinear()) {
    const auto k = static_cast<Eigen::Index>(L.size());
    gamma_.resize(k + 1, k + 1);
    gamma_(0, 0) = inner(v, v, P.gram());
    for (Eigen::Index i = 0; i < k; ++i) {
      const double s = P.gram().form(L[static_cast<std::size_t>(i)].values(), v.values());
      gamma_(0, i + 1) = s;
      gamma_(i + 1, 0) = s;
    }
    if (k > 0) gamma_.bottomRightCorner(k, k) = L.gram();
    const auto& nodes = term_.nodes();
    basis_.resize(static_cast<Eigen::Index>(nodes.size()), k + 1);
    basis_.col(0) = term_.restrict(v.values());
    for (Eigen::Index i = 0; i < k; ++i) basis_.col(i + 1) = term_.restrict(L[static_cast<std::size_t>(i)].values());
  }

  Eigen::Index size() const { return gamma_.rows(); }
  const Eigen::MatrixXd& gamma() const { return gamma_; }

  double value_and_gradient(const Eigen::VectorXd& x, Eigen::VectorXd& grad) const {
    const Eigen::VectorXd w = basis_ * x;
    term_.load(w, load_);
    grad = gamma_ * x - basis_.transpose() * load_;
    return 0.5 * x.dot(gamma_ * x) - term_.potential(w);
  }

 private:
  const NonlinearTerm& term_;
  Eigen::MatrixXd gamma_;
  Eigen::MatrixXd basis_;
  mutable Eigen::VectorXd load_;
};

bool finite(const Eigen::VectorXd& x) { return x.allFinite(); }

}  // namespace

PeakGuess PeakGuess::initial(const SupportSpace& L) {
  PeakGuess g;
  g.coeffs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(L.size()));
  if (!L.empty()) g.coeffs[g.coeffs.size() - 1] = 1.0;
  return g;
}

PeakLocation locate_peak(const Problem& P, const SupportSpace& L, const UnitVector& v, const PeakGuess& warm,
                         const PeakOptions& options) {
  require_same_grid(v.get().grid(), P.grid(), "peak selection");
  if (static_cast<std::size_t>(warm.coeffs.size()) != L.size())
    throw DimensionError(
        fmt::format("peak guess has {} support coefficients, support space has {}", warm.coeffs.size(), L.size()));
  const RayObjective objective(P, L, v.get());
  const Eigen::Index dim = objective.size();

  Eigen::VectorXd x(dim);
  x[0] = warm.t;
  x.tail(dim - 1) = warm.coeffs;
  if (!finite(x)) throw PeakSelectionError("peak guess is not finite");

  // We minimize f = -E. Near a peak the Hessian of f is about 2 Gamma for the
  // cubic nonlinearity, so H0 = Gamma^{-1} / 2 is a well-scaled start.
  const Eigen::MatrixXd h0 = 0.5 * objective.gamma().llt().solve(Eigen::MatrixXd::Identity(dim, dim));
  Eigen::MatrixXd h = h0;
  Eigen::VectorXd grad_e;
  double energy = objective.value_and_gradient(x, grad_e);
  if (!std::isfinite(energy) || !finite(grad_e)) throw PeakSelectionError("energy is not finite at the peak guess");

  constexpr double kArmijo = 1e-4;
  const double eps = std::numeric_limits<double>::epsilon();
  int iterations = 0;
  bool first_update = true;
  for (;;) {
    const double gnorm = grad_e.norm();
    // E grows like |x|^2, so |grad E| |x| / |E| measures the relative error of x.
    const double size = std::max(1.0, std::sqrt(std::max(0.0, x.dot(objective.gamma() * x))));
    if (gnorm * size <= options.relative_tolerance * (1.0 + std::abs(energy))) break;
    if (iterations >= options.max_iterations)
      throw PeakSelectionError(fmt::format("inner maximization did not converge in {} iterations (gradient {:.3e})",
                                           options.max_iterations, gnorm));
    ++iterations;

    // f = -E, grad f = -grad_e, direction d = -H grad f = H grad_e.
    Eigen::VectorXd d = h * grad_e;
    double slope = -grad_e.dot(d);
    if (!(slope < 0.0)) {
      h = h0;
      first_update = true;
      d = h * grad_e;
      slope = -grad_e.dot(d);
    }

    double step = 1.0;
    Eigen::VectorXd x_new, grad_new;
    double energy_new = 0.0;
    bool accepted = false;
    for (int trial = 0; trial < 60; ++trial, step *= 0.5) {
      x_new = x + step * d;
      energy_new = objective.value_and_gradient(x_new, grad_new);
      if (!std::isfinite(energy_new) || !finite(grad_new)) continue;
      const double decrease = -energy_new - (-energy);
      if (decrease <= kArmijo * step * slope) {
        accepted = true;
        break;
      }
      // At the roundoff floor of E the Armijo test is meaningless; accept a
      // step that does not measurably increase f and shrinks the gradient.
      if (decrease <= 8 * eps * (1.0 + std::abs(energy)) && grad_new.norm() < gnorm) {
        accepted = true;
        break;
      }
    }
    if (!accepted)
      throw PeakSelectionError(fmt::format("inner line search failed at gradient {:.3e}", gnorm));

    const Eigen::VectorXd s = x_new - x;
    const Eigen::VectorXd y = grad_e - grad_new;  // change of grad f
    const double sy = s.dot(y);
    if (sy > eps * s.norm() * y.norm()) {
      if (first_update) {
        h *= sy / y.dot(h * y);  // Shanno scaling
        first_update = false;
      }
      const double r = 1.0 / sy;
      const Eigen::VectorXd hy = h * y;
      h += ((sy + y.dot(hy)) * r * r) * (s * s.transpose()) - r * (hy * s.transpose() + s * hy.transpose());
    }
    x = std::move(x_new);
    grad_e = std::move(grad_new);
    energy = energy_new;
  }

  if (x[0] < 0.0 && P.nonlinear().odd()) x = -x;
  return {x[0], x.tail(dim - 1), energy, iterations, grad_e.norm()};
}

PeakPoint complete_peak(const Problem& P, const SupportSpace& L, const UnitVector& v, const PeakLocation& at) {
  GridFunction w = GridFunction::axpy(L.combine(at.coeffs), at.t, v.get());
  GridFunction grad = P.gradient(w);
  const double grad_norm = norm(grad, P.gram());
  return {at.t, at.coeffs, at.energy, at.iterations, at.inner_gradnorm, std::move(w), std::move(grad), grad_norm};
}

}  // namespace saddle
