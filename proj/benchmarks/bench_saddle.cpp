#include "saddle/solver.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace saddle;

namespace {

Problem lane_emden(int n) { return Problem::dirichlet(GridSpec::square(-1.0, 1.0, n), {}); }

GridFunction random_interior(const GridSpec& grid, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid.node_count()));
  for (std::size_t k = 0; k < grid.node_count(); ++k)
    if (!grid.on_boundary(k)) v[static_cast<Eigen::Index>(k)] = normal(rng);
  return GridFunction(grid, std::move(v));
}

void BM_GramForm(benchmark::State& state) {
  const Problem P = lane_emden(static_cast<int>(state.range(0)));
  std::mt19937_64 rng(1);
  const GridFunction u = random_interior(P.grid(), rng), v = random_interior(P.grid(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(inner(u, v, P.gram()));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(P.grid().node_count()));
}
BENCHMARK(BM_GramForm)->Arg(64)->Arg(128)->Arg(256);

void BM_GramSolve(benchmark::State& state) {
  const Problem P = lane_emden(static_cast<int>(state.range(0)));
  std::mt19937_64 rng(2);
  const GridFunction b = random_interior(P.grid(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(P.gram().solve(b));
}
BENCHMARK(BM_GramSolve)->Arg(64)->Arg(128)->Arg(256);

void BM_PeakSelect(benchmark::State& state) {
  const Problem P = lane_emden(static_cast<int>(state.range(0)));
  const SupportSpace none(P.grid());
  const UnitVector pos = P.initial_direction(RegionIndicator{});
  const PeakPoint ground = peak_select(P, none, pos, PeakGuess::initial(none));
  const SupportSpace L({ground.w}, P.gram());
  const Region half = Region::halfplane(1, 0, 0);
  const UnitVector v = P.initial_direction(RegionIndicator{half, Region::complement(half)});
  for (auto _ : state) benchmark::DoNotOptimize(locate_peak(P, L, v, PeakGuess::initial(L)));
}
BENCHMARK(BM_PeakSelect)->Arg(64)->Arg(128);

void BM_GroundState(benchmark::State& state, StepRule rule, TrialSource trial) {
  const Problem P = lane_emden(static_cast<int>(state.range(0)));
  const SupportSpace L(P.grid());
  const UnitVector v0 = P.initial_direction(RegionIndicator{});
  SolverConfig cfg;
  cfg.rule = rule;
  cfg.trial = trial;
  cfg.record_time = false;
  int iterations = 0;
  for (auto _ : state) iterations = lmm_solve(P, L, v0, cfg).trace.iterations();
  state.counters["outer_iterations"] = iterations;
}
BENCHMARK_CAPTURE(BM_GroundState, armijo, StepRule::Armijo, TrialSource::Fixed)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_GroundState, zh_bb1, StepRule::ZH, TrialSource::BB1)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_GroundState, gll_abb, StepRule::GLL, TrialSource::ABB)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_GroundState, exact, StepRule::Exact, TrialSource::Fixed)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
