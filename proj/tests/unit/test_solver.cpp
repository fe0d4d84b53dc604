#include "fixtures.hpp"

#include "saddle/error.hpp"

#include <doctest.h>

#include <cmath>

using namespace saddle;
using namespace saddle::testing;

namespace {

bool same_rows(const SolverTrace& a, const SolverTrace& b) {
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const TraceRow &x = a.rows[i], &y = b.rows[i];
    if (x.lambda != y.lambda || x.m != y.m || x.alpha != y.alpha || x.energy != y.energy ||
        x.gradnorm != y.gradnorm || x.t != y.t || x.residual != y.residual)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("Armijo ground state on a coarse grid") {
  const Problem P = lane_emden(32);
  const SupportSpace L(P.grid());
  SolverConfig cfg = method(StepRule::Armijo);
  double worst_orthogonality = 0.0;
  cfg.observer = [&](int, const UnitVector& v, const PeakPoint& pk) {
    worst_orthogonality = std::max(worst_orthogonality, std::abs(P.pairing(pk.w, v)) / (1.0 + pk.energy));
  };
  const SolveResult r = lmm_solve(P, L, P.initial_direction(RegionIndicator{}), cfg);
  REQUIRE(r.trace.converged());
  CHECK(worst_orthogonality < 1e-8);
  const auto& rows = r.trace.rows;
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].energy <= rows[i - 1].energy);
  CHECK(rows.back().alpha == 0.0);
  CHECK(rows.back().lambda == 0.0);
  CHECK(rows.back().gradnorm < cfg.grad_tol);
  CHECK(rows.back().residual < cfg.residual_tol);
  CHECK(rows.back().seconds == 0.0);
  CHECK(r.trace.iterations() == static_cast<int>(rows.size()) - 1);
  CHECK(r.solution.values().minCoeff() > -1e-12);
  CHECK(P.energy(r.solution) == doctest::Approx(rows.back().energy).epsilon(1e-12));
  CHECK(rows.back().energy == doctest::Approx(9.4).epsilon(0.02));
}

TEST_CASE("traces are reproducible with timings off") {
  const Problem P = lane_emden(24);
  const SupportSpace L(P.grid());
  const UnitVector v0 = P.initial_direction(RegionIndicator{});
  const SolverConfig cfg = method(StepRule::ZH, TrialSource::BB1);
  CHECK(same_rows(lmm_solve(P, L, v0, cfg).trace, lmm_solve(P, L, v0, cfg).trace));
}

TEST_CASE("ZH with eta = 0 and GLL with M = 1 reproduce Armijo") {
  const Problem P = lane_emden(24);
  const SupportSpace L(P.grid());
  const UnitVector v0 = P.initial_direction(split(Region::halfplane(1, 0, 0)));
  const SolverConfig armijo = method(StepRule::Armijo);
  SolverConfig zh = method(StepRule::ZH), gll = method(StepRule::GLL);
  zh.params.eta = 0.0;
  gll.params.M = 1;
  const SolverTrace ref = lmm_solve(P, L, v0, armijo).trace;
  CHECK(same_rows(ref, lmm_solve(P, L, v0, zh).trace));
  CHECK(same_rows(ref, lmm_solve(P, L, v0, gll).trace));
}

TEST_CASE("second solution with a support space") {
  const Problem P = lane_emden(32);
  const SupportSpace none(P.grid());
  const SolveResult u1 = lmm_solve(P, none, P.initial_direction(RegionIndicator{}), method(StepRule::ZH, TrialSource::BB1));
  REQUIRE(u1.trace.converged());
  const SupportSpace L({u1.solution}, P.gram());
  const SolveResult u2 =
      lmm_solve(P, L, P.initial_direction(split(Region::halfplane(1, 0, 0))), method(StepRule::ZH, TrialSource::BB1));
  REQUIRE(u2.trace.converged());
  CHECK(u2.trace.rows.back().energy > 5 * u1.trace.rows.back().energy);
  // Sign-changing: both signs carry substantial mass.
  CHECK(u2.solution.values().maxCoeff() > 0.5 * u2.solution.max_abs());
  CHECK(u2.solution.values().minCoeff() < -0.5 * u2.solution.max_abs());
}

TEST_CASE("termination reasons") {
  const Problem P = lane_emden(16);
  const SupportSpace L(P.grid());
  const UnitVector v0 = P.initial_direction(RegionIndicator{});

  SolverConfig capped = method(StepRule::Armijo);
  capped.max_iterations = 2;
  const SolveResult r = lmm_solve(P, L, v0, capped);
  CHECK(r.trace.termination == Termination::MaxIterations);
  CHECK(r.trace.rows.size() == 3);

  SolverConfig floor = method(StepRule::Armijo);
  floor.delta_floor = 1e6;
  CHECK(lmm_solve(P, L, v0, floor).trace.termination == Termination::Degenerate);

  CHECK(to_string(Termination::ResidualLimited) == "residual_limited");
}

TEST_CASE("invalid solver input") {
  const Problem P = lane_emden(16);
  const UnitVector v0 = P.initial_direction(RegionIndicator{});
  const SupportSpace L({v0.get()}, P.gram());
  CHECK_THROWS_AS(lmm_solve(P, L, v0, method(StepRule::Armijo)), InputError);

  const SupportSpace none(P.grid());
  CHECK_THROWS_AS(lmm_solve(P, none, v0, method(StepRule::Exact, TrialSource::BB1)), InputError);
  SolverConfig bad = method(StepRule::ZH);
  bad.grad_tol = 0.0;
  CHECK_THROWS_AS(lmm_solve(P, none, v0, bad), InputError);
  bad = method(StepRule::ZH);
  bad.params.lambda_max = 1e-9;
  CHECK_THROWS_AS(lmm_solve(P, none, v0, bad), InputError);

  const Problem Q = lane_emden(8);
  CHECK_THROWS_AS(lmm_solve(Q, SupportSpace(Q.grid()), v0, method(StepRule::Armijo)), DimensionError);
}
