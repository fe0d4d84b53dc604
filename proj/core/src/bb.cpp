#include "saddle/bb.hpp"

#include <algorithm>

namespace saddle {

std::string to_string(TrialSource source) {
  switch (source) {
    case TrialSource::Fixed: return "fixed";
    case TrialSource::BB1: return "bb1";
    case TrialSource::BB2: return "bb2";
    case TrialSource::PBB1: return "pbb1";
    case TrialSource::PBB2: return "pbb2";
    case TrialSource::ABB: return "abb";
    case TrialSource::APBB: return "apbb";
  }
  return "?";
}

bool uses_bb1(TrialSource source, int k) {
  switch (source) {
    case TrialSource::BB1:
    case TrialSource::PBB1: return true;
    case TrialSource::ABB:
    case TrialSource::APBB: return k % 2 == 1;
    default: return false;
  }
}

bool is_projected(TrialSource source) {
  return source == TrialSource::PBB1 || source == TrialSource::PBB2 || source == TrialSource::APBB;
}

namespace {

TrialStep safeguard(double ss, double sy, double yy, bool bb1, const RuleParams& params) {
  TrialStep out;
  out.sy = sy;
  if (!(sy > 0.0)) {
    out.lambda = params.lambda0;
    out.fallback = true;
    return out;
  }
  out.bb1 = sy / yy;
  out.bb2 = ss / sy;
  // Cauchy-Schwarz gives bb1 <= bb2; only roundoff on collinear pairs can
  // reverse it.
  out.bb1 = std::min(out.bb1, out.bb2);
  out.lambda = std::clamp(bb1 ? out.bb1 : out.bb2, params.lambda_min, params.lambda_max);
  return out;
}

}  // namespace

TrialStep bb_trial(const BBHistory& hist, const UnitVector& v, const GridFunction& g, const GramOperator& G,
                   bool bb1, const RuleParams& params) {
  const GridFunction s = v.get() - hist.v_prev.get();
  const GridFunction y = g - hist.g_prev;
  return safeguard(inner(s, s, G), inner(s, y, G), inner(y, y, G), bb1, params);
}

TrialStep pbb_trial(const BBHistory& hist, const UnitVector& v, const GridFunction& g, const GramOperator& G,
                    bool bb1, const RuleParams& params) {
  const GridFunction pg = tangent_project(v, hist.g_prev, G);
  const GridFunction s = -hist.alpha_prev * pg;
  const GridFunction y = g - pg;
  return safeguard(inner(s, s, G), inner(s, y, G), inner(y, y, G), bb1, params);
}

TrialStep trial_step(TrialSource source, int k, const std::optional<BBHistory>& hist, const UnitVector& v,
                     const GridFunction& g, const GramOperator& G, const RuleParams& params) {
  if (source == TrialSource::Fixed || k == 0 || !hist) return {params.lambda0, source != TrialSource::Fixed};
  const bool bb1 = uses_bb1(source, k);
  return is_projected(source) ? pbb_trial(*hist, v, g, G, bb1, params) : bb_trial(*hist, v, g, G, bb1, params);
}

}  // namespace saddle
