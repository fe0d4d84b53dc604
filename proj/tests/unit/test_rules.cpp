#include "fixtures.hpp"

#include "saddle/error.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace saddle;
using namespace saddle::testing;

TEST_CASE("rule parameter validation") {
  CHECK_NOTHROW(RuleParams{}.validate());
  auto rejects = [](auto mutate, const char* fragment) {
    RuleParams p;
    mutate(p);
    try {
      p.validate();
      FAIL("accepted invalid parameters");
    } catch (const InputError& e) {
      CHECK(std::string(e.what()).find(fragment) != std::string::npos);
    }
  };
  rejects([](RuleParams& p) { p.sigma = 1.0; }, "sigma");
  rejects([](RuleParams& p) { p.rho = 0.0; }, "rho");
  rejects([](RuleParams& p) { p.M = 0; }, "M");
  rejects([](RuleParams& p) { p.eta = 1.5; }, "eta");
  rejects([](RuleParams& p) { p.lambda_min = 20.0; }, "lambda_min must be smaller than lambda_max");
  rejects([](RuleParams& p) { p.lambda0 = -1.0; }, "lambda0");
  rejects([](RuleParams& p) { p.m_max = -1; }, "m_max");
}

TEST_CASE("ZH recursion") {
  ZHState s{1.0, 10.0};
  s = update_zh_state(s, 0.5, 8.0);
  CHECK(s.Q == doctest::Approx(1.5));
  CHECK(s.C == doctest::Approx((0.5 * 10.0 + 8.0) / 1.5));
  // eta = 0 makes C the latest energy, eta = 1 the running mean.
  CHECK(update_zh_state({3.0, 7.0}, 0.0, 2.0).C == 2.0);
  ZHState mean{1.0, 4.0};
  for (double e : {2.0, 3.0, 1.0}) mean = update_zh_state(mean, 1.0, e);
  CHECK(mean.Q == doctest::Approx(4.0));
  CHECK(mean.C == doctest::Approx(2.5));
}

TEST_CASE("reference values of each rule") {
  RuleParams p;
  p.M = 3;
  RuleState armijo(StepRule::Armijo, p, 5.0), gll(StepRule::GLL, p, 5.0), zh(StepRule::ZH, p, 5.0);
  for (double e : {4.0, 4.5, 3.0, 2.0}) {
    armijo.advance(e);
    gll.advance(e);
    zh.advance(e);
  }
  CHECK(armijo.reference_value(2.0) == 2.0);
  CHECK(gll.reference_value(2.0) == 4.5);  // window {4.5, 3, 2}
  CHECK(gll.window().size() == 3);
  CHECK(zh.reference_value(2.0) == doctest::Approx(zh.zh().C));
  CHECK(zh.zh().C > 2.0);
  CHECK(zh.zh().C < 5.0);
}

TEST_CASE("trial step sources") {
  CHECK(uses_bb1(TrialSource::BB1, 4));
  CHECK_FALSE(uses_bb1(TrialSource::BB2, 3));
  CHECK(uses_bb1(TrialSource::ABB, 3));
  CHECK_FALSE(uses_bb1(TrialSource::APBB, 4));
  CHECK(is_projected(TrialSource::APBB));
  CHECK_FALSE(is_projected(TrialSource::ABB));
  CHECK(to_string(TrialSource::PBB2) == "pbb2");
  CHECK(to_string(StepRule::GLL) == "gll");
}

TEST_CASE("BB steps on random histories") {
  const Problem P = lane_emden(12);
  const GramOperator& G = P.gram();
  RuleParams params;
  std::mt19937_64 rng(17);
  int positive = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const UnitVector v_prev = UnitVector::normalize(random_interior(P.grid(), rng), G);
    const GridFunction g_prev = random_interior(P.grid(), rng);
    const UnitVector v = retract(v_prev, g_prev, 0.05, G);
    // A shrinking gradient gives (s, y) > 0, a growing one (s, y) < 0.
    const double growth = trial % 4 == 0 ? 1.5 : 0.3;
    const GridFunction g = GridFunction::axpy(0.2 * random_interior(P.grid(), rng), growth, g_prev);
    const BBHistory hist{v_prev, g_prev, 0.05};
    for (bool projected : {false, true}) {
      const TrialStep one = projected ? pbb_trial(hist, v, g, G, true, params) : bb_trial(hist, v, g, G, true, params);
      const TrialStep two = projected ? pbb_trial(hist, v, g, G, false, params) : bb_trial(hist, v, g, G, false, params);
      if (one.sy > 0.0) {
        ++positive;
        CHECK(one.bb1 <= one.bb2);
        CHECK_FALSE(one.fallback);
        CHECK(one.lambda == std::clamp(one.bb1, params.lambda_min, params.lambda_max));
        CHECK(two.lambda == std::clamp(two.bb2, params.lambda_min, params.lambda_max));
      } else {
        CHECK(one.fallback);
        CHECK(one.lambda == params.lambda0);
      }
    }
  }
  CHECK(positive > 0);
  CHECK(positive < 80);
}

TEST_CASE("BB safeguards and fallbacks") {
  const Problem P = lane_emden(12);
  const GramOperator& G = P.gram();
  std::mt19937_64 rng(19);
  RuleParams params;
  params.lambda_min = 1.0;
  params.lambda_max = 2.0;
  const UnitVector v_prev = UnitVector::normalize(random_interior(P.grid(), rng), G);
  const GridFunction g_prev = random_interior(P.grid(), rng);
  const UnitVector v = retract(v_prev, g_prev, 0.01, G);

  // y = -s / 1000 has (s, y) < 0.
  const GridFunction s = v.get() - v_prev.get();
  const TrialStep neg = bb_trial({v_prev, g_prev, 0.01}, v, g_prev - 1e-3 * s, G, true, params);
  CHECK(neg.fallback);
  CHECK(neg.lambda == params.lambda0);

  // y = 1000 s gives BB1 = BB2 = 1e-3, clamped up to lambda_min.
  const TrialStep tiny = bb_trial({v_prev, g_prev, 0.01}, v, g_prev + 1e3 * s, G, false, params);
  CHECK(tiny.bb2 == doctest::Approx(1e-3));
  CHECK(tiny.lambda == params.lambda_min);
  const TrialStep huge = bb_trial({v_prev, g_prev, 0.01}, v, g_prev + 1e-3 * s, G, true, params);
  CHECK(huge.lambda == params.lambda_max);

  const std::optional<BBHistory> hist = BBHistory{v_prev, g_prev, 0.01};
  CHECK(trial_step(TrialSource::Fixed, 5, hist, v, g_prev, G, params).lambda == params.lambda0);
  CHECK_FALSE(trial_step(TrialSource::Fixed, 5, hist, v, g_prev, G, params).fallback);
  CHECK(trial_step(TrialSource::BB1, 0, std::nullopt, v, g_prev, G, params).fallback);
}
