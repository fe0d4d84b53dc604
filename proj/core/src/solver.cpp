#include "saddle/solver.hpp"

#include "saddle/error.hpp"

#include <fmt/format.h>

#include <chrono>
#include <optional>

namespace saddle {

namespace {

constexpr double kMinPerp = 1e-8;
// Gradient-converged iterates allowed without a 1% residual improvement
// before the run is declared residual-limited.
constexpr int kResidualPatience = 50;

}  // namespace

std::string to_string(Termination reason) {
  switch (reason) {
    case Termination::Converged: return "converged";
    case Termination::ResidualLimited: return "residual_limited";
    case Termination::MaxIterations: return "max_iterations";
    case Termination::Degenerate: return "degenerate";
    case Termination::Failure: return "failure";
  }
  return "?";
}

int SolverTrace::peak_evals() const {
  int total = 1;
  for (const auto& row : rows) total += row.peak_evals;
  return total;
}

void SolverConfig::validate() const {
  params.validate();
  if (!(grad_tol > 0.0)) throw InputError(fmt::format("grad_tol must be positive, got {}", grad_tol));
  if (!(residual_tol > 0.0)) throw InputError(fmt::format("residual_tol must be positive, got {}", residual_tol));
  if (max_iterations < 0) throw InputError(fmt::format("max_iter must be nonnegative, got {}", max_iterations));
  if (!(delta_floor >= 0.0)) throw InputError(fmt::format("delta_floor must be nonnegative, got {}", delta_floor));
  if (peak.max_iterations < 1)
    throw InputError(fmt::format("inner iteration cap must be positive, got {}", peak.max_iterations));
  if (rule == StepRule::Exact && trial != TrialSource::Fixed)
    throw InputError("the exact rule takes no trial step; use trial source 'fixed'");
}

SolveResult lmm_solve(const Problem& P, const SupportSpace& L, const UnitVector& v0, const SolverConfig& cfg) {
  cfg.validate();
  const GramOperator& G = P.gram();
  require_same_grid(v0.get().grid(), P.grid(), "initial direction");
  require_same_grid(L.grid(), P.grid(), "support space");
  const double perp0 = decompose_against_support(v0, L, G).perp_norm;
  if (perp0 < kMinPerp)
    throw InputError(fmt::format("initial direction lies in the support space (perp norm {:.3e})", perp0));
  const SupportSpace support = L.empty() ? L : L.with_reference(v0);

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    if (!cfg.record_time) return 0.0;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  UnitVector v = v0;
  PeakPoint pk = peak_select(P, support, v, PeakGuess::initial(support), cfg.peak);
  RuleState state(cfg.rule, cfg.params, pk.energy);
  std::optional<BBHistory> history;
  SolverTrace trace;
  double best_residual = 0.0;
  int stalled = -1;  // -1 until the gradient first converges

  for (int k = 0;; ++k) {
    if (cfg.observer) cfg.observer(k, v, pk);
    const SupportDecomposition split = decompose_against_support(v, support, G);
    TraceRow row;
    row.k = k;
    row.energy = pk.energy;
    row.reference = state.reference_value(pk.energy);
    row.gradnorm = pk.grad_norm;
    row.t = pk.t;
    row.tau = split.tau;
    row.vperp = split.perp_norm;
    row.residual = P.residual_inf(pk.w);
    row.Q = state.zh().Q;

    auto finish = [&](Termination reason, std::string message) {
      row.seconds = elapsed();
      trace.rows.push_back(row);
      trace.termination = reason;
      trace.message = std::move(message);
    };

    if (pk.t < cfg.delta_floor) {
      finish(Termination::Degenerate,
             fmt::format("t_k = {:.3e} fell below the floor {:.3e}; the iterate collapses into the support space",
                         pk.t, cfg.delta_floor));
      break;
    }
    if (row.gradnorm < cfg.grad_tol) {
      if (row.residual < cfg.residual_tol) {
        finish(Termination::Converged, "gradient and residual below tolerance");
        break;
      }
      if (stalled < 0 || row.residual < 0.99 * best_residual) {
        best_residual = row.residual;
        stalled = 0;
      } else if (++stalled >= kResidualPatience) {
        finish(Termination::ResidualLimited,
               fmt::format("gradient converged; residual stalled at {:.3e} above tolerance {:.3e}", row.residual,
                           cfg.residual_tol));
        break;
      }
    }
    if (k >= cfg.max_iterations) {
      finish(Termination::MaxIterations, fmt::format("iteration cap {} reached", cfg.max_iterations));
      break;
    }

    try {
      std::optional<StepResult> step;
      if (cfg.rule == StepRule::Exact) {
        row.lambda = cfg.params.lambda_max;
        step = exact_search(P, support, v, pk, cfg.params.lambda_max, cfg.peak);
      } else {
        const TrialStep trial = trial_step(cfg.trial, k, history, v, pk.grad, G, cfg.params);
        row.lambda = trial.lambda;
        row.trial_fallback = trial.fallback;
        step = backtracking_search(P, support, v, pk, trial.lambda, row.reference, cfg.params, cfg.peak);
      }
      row.m = step->m;
      row.alpha = step->alpha;
      row.peak_evals = step->peak_evals;
      row.inner_iterations = step->inner_iterations;
      row.search_warning = step->warning;
      row.seconds = elapsed();
      trace.rows.push_back(row);

      history = BBHistory{v, pk.grad, step->alpha};
      state.advance(step->peak.energy);
      v = std::move(step->v);
      pk = std::move(step->peak);
    } catch (const Error& e) {
      row.lambda = 0.0;
      row.m = 0;
      // With the gradient already converged, a failed search means energy
      // differences have reached the rounding floor.
      if (dynamic_cast<const StepSearchError*>(&e) && row.gradnorm < cfg.grad_tol)
        finish(Termination::ResidualLimited,
               fmt::format("gradient converged; residual {:.3e} above tolerance {:.3e} and {}", row.residual,
                           cfg.residual_tol, e.what()));
      else
        finish(Termination::Failure, e.what());
      break;
    }
  }
  return {pk.w, std::move(trace)};
}

}  // namespace saddle
