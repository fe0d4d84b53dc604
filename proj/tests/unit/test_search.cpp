#include "fixtures.hpp"

#include "saddle/error.hpp"
#include "saddle/search.hpp"

#include <doctest.h>

#include <cmath>

using namespace saddle;
using namespace saddle::testing;

namespace {

struct Start {
  Problem P = lane_emden(24);
  SupportSpace L{P.grid()};
  UnitVector v = P.initial_direction(split(Region::disc(0.6)));
  PeakPoint pk = peak_select(P, L, v, PeakGuess::initial(L));
};

}  // namespace

TEST_CASE("backtracking accepts the largest admissible step") {
  const Start s;
  RuleParams params;
  const StepResult r = backtracking_search(s.P, s.L, s.v, s.pk, 10.0, s.pk.energy, params);
  CHECK(r.alpha == doctest::Approx(10.0 * std::pow(params.rho, r.m)));
  const double bound = s.pk.energy - params.sigma * r.alpha * s.pk.t * s.pk.grad_norm * s.pk.grad_norm;
  CHECK(r.peak.energy <= bound);
  CHECK(r.peak_evals == r.m + 1);
  CHECK(std::abs(norm(r.v, s.P.gram()) - 1.0) <= UnitVector::kNormTolerance);
  if (r.m > 0) {
    // The previous trial step must have failed the test.
    const UnitVector prev = retract(s.v, s.pk.grad, r.alpha / params.rho, s.P.gram());
    const PeakLocation at = locate_peak(s.P, s.L, prev, s.pk.guess());
    CHECK(at.energy > s.pk.energy - params.sigma * (r.alpha / params.rho) * s.pk.t * s.pk.grad_norm * s.pk.grad_norm);
  }
}

TEST_CASE("a nonmonotone reference admits larger steps") {
  const Start s;
  RuleParams params;
  const StepResult mono = backtracking_search(s.P, s.L, s.v, s.pk, 10.0, s.pk.energy, params);
  const StepResult loose = backtracking_search(s.P, s.L, s.v, s.pk, 10.0, s.pk.energy + 100.0, params);
  CHECK(loose.m <= mono.m);
}

TEST_CASE("backtracking fails when nothing is acceptable") {
  const Start s;
  RuleParams params;
  params.m_max = 3;
  CHECK_THROWS_AS(backtracking_search(s.P, s.L, s.v, s.pk, 1.0, s.pk.energy - 1e6, params), StepSearchError);
}

TEST_CASE("exact search improves on every scanned step") {
  const Start s;
  const StepResult r = exact_search(s.P, s.L, s.v, s.pk, 10.0);
  CHECK_FALSE(r.warning);
  CHECK(r.alpha > 0.0);
  CHECK(r.alpha <= 10.0);
  CHECK(r.peak.energy < s.pk.energy);
  CHECK(r.peak_evals > 32);
  for (double alpha : {1e-3, 1e-2, 0.1, 1.0}) {
    const UnitVector va = retract(s.v, s.pk.grad, alpha, s.P.gram());
    CHECK(r.peak.energy <= locate_peak(s.P, s.L, va, s.pk.guess()).energy + 1e-12);
  }
}
