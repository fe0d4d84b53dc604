#include "saddle/search.hpp"

#include "saddle/error.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>
#include <optional>

namespace saddle {

namespace {

struct Trial {
  double alpha;
  UnitVector v;
  PeakLocation at;
};

/// Peak at v(alpha); nullopt when the retraction or the inner solve fails.
std::optional<Trial> try_step(const Problem& P, const SupportSpace& L, const UnitVector& v, const PeakPoint& pk,
                              double alpha, const PeakOptions& options, int& evals, int& iterations) {
  ++evals;
  try {
    UnitVector va = retract(v, pk.grad, alpha, P.gram());
    PeakLocation at = locate_peak(P, L, va, pk.guess(), options);
    iterations += at.iterations;
    return Trial{alpha, std::move(va), std::move(at)};
  } catch (const RetractionError&) {
    return std::nullopt;
  } catch (const PeakSelectionError&) {
    return std::nullopt;
  }
}

}  // namespace

StepResult backtracking_search(const Problem& P, const SupportSpace& L, const UnitVector& v, const PeakPoint& pk,
                               double lambda, double reference, const RuleParams& params,
                               const PeakOptions& peak_options) {
  if (!(pk.grad_norm > 0.0)) throw StepSearchError("backtracking needs a nonzero gradient");
  const double slope = params.sigma * pk.t * pk.grad_norm * pk.grad_norm;
  int evals = 0, iterations = 0;
  double alpha = lambda;
  for (int m = 0; m <= params.m_max; ++m, alpha *= params.rho) {
    auto trial = try_step(P, L, v, pk, alpha, peak_options, evals, iterations);
    if (!trial || !(trial->at.energy <= reference - alpha * slope)) continue;
    PeakPoint next = complete_peak(P, L, trial->v, trial->at);
    return {alpha, m, std::move(trial->v), std::move(next), evals, iterations, false};
  }
  throw StepSearchError(fmt::format(
      "no acceptable step among lambda*rho^m, m <= {} (lambda {:.3e}, reference {:.12g}, gradient {:.3e})",
      params.m_max, lambda, reference, pk.grad_norm));
}

StepResult exact_search(const Problem& P, const SupportSpace& L, const UnitVector& v, const PeakPoint& pk,
                        double lambda_max, const PeakOptions& peak_options) {
  if (!(pk.grad_norm > 0.0)) throw StepSearchError("exact search needs a nonzero gradient");
  constexpr int kScan = 32;
  constexpr double kSmallest = 1e-6;
  constexpr double kWidth = 1e-4;
  const double inf = std::numeric_limits<double>::infinity();
  int evals = 0, iterations = 0;
  std::optional<Trial> best;
  auto energy_at = [&](double alpha) {
    auto trial = try_step(P, L, v, pk, alpha, peak_options, evals, iterations);
    if (!trial) return inf;
    const double e = trial->at.energy;
    if (!best || e < best->at.energy) best = std::move(trial);
    return e;
  };

  std::vector<double> alphas(kScan), energies(kScan);
  const double log_lo = std::log(lambda_max * kSmallest), log_hi = std::log(lambda_max);
  int best_index = 0;
  for (int i = 0; i < kScan; ++i) {
    alphas[i] = i == kScan - 1 ? lambda_max : std::exp(log_lo + (log_hi - log_lo) * i / (kScan - 1));
    energies[i] = energy_at(alphas[i]);
    if (energies[i] < energies[best_index]) best_index = i;
  }
  if (!best) throw StepSearchError("exact search: no scan point admits a peak selection");

  if (!(energies[best_index] < pk.energy)) {
    // Nothing decreases the energy: fall back to the smallest step.
    auto trial = try_step(P, L, v, pk, alphas[0], peak_options, evals, iterations);
    if (!trial) throw StepSearchError("exact search: smallest scan step failed");
    PeakPoint next = complete_peak(P, L, trial->v, trial->at);
    return {alphas[0], 0, std::move(trial->v), std::move(next), evals, iterations, true};
  }

  double a = alphas[std::max(best_index - 1, 0)];
  double b = alphas[std::min(best_index + 1, kScan - 1)];
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - ratio * (b - a), d = a + ratio * (b - a);
  double fc = energy_at(c), fd = energy_at(d);
  while (b - a > kWidth * 0.5 * (a + b)) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = energy_at(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = energy_at(d);
    }
  }
  PeakPoint next = complete_peak(P, L, best->v, best->at);
  return {best->alpha, 0, std::move(best->v), std::move(next), evals, iterations, false};
}

}  // namespace saddle
