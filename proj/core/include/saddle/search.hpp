#pragma once

#include "saddle/peak.hpp"
#include "saddle/rules.hpp"

namespace saddle {

struct StepResult {
  double alpha;
  int m;               ///< backtracking exponent; 0 for the exact rule
  UnitVector v;        ///< v_k(alpha)
  PeakPoint peak;      ///< p(v_k(alpha))
  int peak_evals;      ///< inner maximizations performed, accepted one included
  int inner_iterations;
  bool warning;        ///< exact scan found no decrease
};

/// Largest alpha = lambda rho^m, m = 0..m_max, with
///   E(p(v(alpha))) <= reference - sigma alpha t_k ||g_k||^2.
/// Every trial is warm-started from (t_k, c_k); a trial whose retraction or
/// peak selection fails counts as rejected.
/// Throws StepSearchError when no m <= m_max is accepted.
StepResult backtracking_search(const Problem& P, const SupportSpace& L, const UnitVector& v, const PeakPoint& pk,
                               double lambda, double reference, const RuleParams& params,
                               const PeakOptions& peak_options = {});

/// Approximate global minimizer of alpha -> E(p(v(alpha))) on (0, lambda_max]:
/// 32 log-spaced points from lambda_max * 1e-6, then golden-section search on
/// the bracket around the best point down to relative width 1e-4.
StepResult exact_search(const Problem& P, const SupportSpace& L, const UnitVector& v, const PeakPoint& pk,
                        double lambda_max, const PeakOptions& peak_options = {});

}  // namespace saddle
