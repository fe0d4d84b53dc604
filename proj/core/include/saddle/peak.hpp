#pragma once

#include "saddle/problem.hpp"
#include "saddle/support.hpp"

namespace saddle {

struct PeakOptions {
  int max_iterations = 200;
  /// Stop when the Euclidean gradient of (t, c) -> E, times max(1, ||w||_G),
  /// is below relative_tolerance * (1 + |E|).
  double relative_tolerance = 1e-10;
};

/// Starting point (t, c) of the inner maximization.
struct PeakGuess {
  double t = 1.0;
  Eigen::VectorXd coeffs;

  /// t = 1 and w^L = u_{n-1}, the last (highest-energy) support element.
  static PeakGuess initial(const SupportSpace& L);
};

/// Local maximizer of E on [L, v] without the Riesz gradient; cheap enough to
/// evaluate for every trial step.
struct PeakLocation {
  double t = 0.0;
  Eigen::VectorXd coeffs;
  double energy = 0.0;
  int iterations = 0;
  double inner_gradnorm = 0.0;

  PeakGuess guess() const { return {t, coeffs}; }
};

/// p(v) = t v + sum_i c_i u_i together with E(p(v)) and the gradient there.
struct PeakPoint {
  double t = 0.0;
  Eigen::VectorXd coeffs;
  double energy = 0.0;
  int iterations = 0;
  double inner_gradnorm = 0.0;
  GridFunction w;
  GridFunction grad;
  double grad_norm = 0.0;

  PeakGuess guess() const { return {t, coeffs}; }
};

/// BFGS on (t, c) maximizing E(t v + sum c_i u_i). Energies are evaluated on
/// the nodes where the nonlinearity acts, so one evaluation costs
/// O(nodes * (1 + |L|)) and no linear solve. For odd nonlinearities a
/// maximizer with t < 0 is reflected to (-t, -c).
///
/// Throws PeakSelectionError when the iteration cap is reached or the
/// objective leaves the finite range.
PeakLocation locate_peak(const Problem& P, const SupportSpace& L, const UnitVector& v, const PeakGuess& warm,
                         const PeakOptions& options = {});

/// Builds w and its gradient for a located peak.
PeakPoint complete_peak(const Problem& P, const SupportSpace& L, const UnitVector& v, const PeakLocation& at);

inline PeakPoint peak_select(const Problem& P, const SupportSpace& L, const UnitVector& v, const PeakGuess& warm,
                             const PeakOptions& options = {}) {
  return complete_peak(P, L, v, locate_peak(P, L, v, warm, options));
}

}  // namespace saddle
