#pragma once

#include "saddle/bb.hpp"
#include "saddle/search.hpp"

#include <functional>
#include <string>
#include <vector>

namespace saddle {

struct SolverConfig {
  StepRule rule = StepRule::Armijo;
  TrialSource trial = TrialSource::Fixed;
  RuleParams params;
  PeakOptions peak;
  double grad_tol = 1e-5;
  double residual_tol = 5e-5;
  int max_iterations = 5000;
  /// Smallest admissible t_k; below it the new solution collapses into L.
  double delta_floor = 1e-4;
  /// Write wall-clock seconds into the trace; off gives reproducible traces.
  bool record_time = true;
  /// Called once per iterate with (k, v_k, p(v_k)); used by diagnostics.
  std::function<void(int, const UnitVector&, const PeakPoint&)> observer;

  /// Throws InputError naming the first violated constraint.
  void validate() const;
};

/// State of iterate k and the step taken from it. The last row of a trace has
/// no step: lambda, m and alpha are 0.
struct TraceRow {
  int k = 0;
  double lambda = 0.0;
  int m = 0;
  double alpha = 0.0;
  double energy = 0.0;
  double reference = 0.0;  ///< R_k: E_k, C_k or the GLL window max
  double gradnorm = 0.0;
  double t = 0.0;
  double tau = 0.0;
  double vperp = 0.0;
  double residual = 0.0;
  double seconds = 0.0;  ///< wall time since the solve started
  // Not part of trace.csv.
  double Q = 1.0;
  int peak_evals = 0;
  int inner_iterations = 0;
  bool trial_fallback = false;
  bool search_warning = false;
};

enum class Termination { Converged, ResidualLimited, MaxIterations, Degenerate, Failure };

std::string to_string(Termination reason);

struct SolverTrace {
  std::vector<TraceRow> rows;
  Termination termination = Termination::Failure;
  std::string message;

  int iterations() const { return rows.empty() ? 0 : rows.back().k; }
  bool converged() const { return termination == Termination::Converged; }
  /// Peak selections over the whole run, the initial one included.
  int peak_evals() const;
};

struct SolveResult {
  GridFunction solution;
  SolverTrace trace;
};

/// Local minimax iteration v_{k+1} = v_k(alpha_k) until ||g_k|| < grad_tol and
/// residual_inf < residual_tol.
///
/// Stops early with ResidualLimited when the gradient has converged but the
/// residual has stopped improving, with Degenerate when t_k < delta_floor, and
/// with Failure when a step search or peak selection breaks down; the solution
/// is then the last accepted peak. Throws InputError when v0 lies in span(L)
/// and PeakSelectionError when the initial peak cannot be found.
SolveResult lmm_solve(const Problem& P, const SupportSpace& L, const UnitVector& v0, const SolverConfig& cfg);

}  // namespace saddle
