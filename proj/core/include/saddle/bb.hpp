#pragma once

#include "saddle/hilbert.hpp"
#include "saddle/rules.hpp"

#include <optional>
#include <string>

namespace saddle {

/// Where the trial step lambda_k of the backtracking search comes from.
enum class TrialSource { Fixed, BB1, BB2, PBB1, PBB2, ABB, APBB };

std::string to_string(TrialSource source);

/// Data of the previous outer iteration, available for k >= 1.
struct BBHistory {
  UnitVector v_prev;
  GridFunction g_prev;
  double alpha_prev;
};

struct TrialStep {
  double lambda = 0.0;
  bool fallback = false;  ///< lambda0 used because (s, y) <= 0 or no history
  double sy = 0.0;        ///< (s, y)_G of the secant pair actually used
  double bb1 = 0.0;       ///< (s, y) / (y, y), 0 when undefined
  double bb2 = 0.0;       ///< (s, s) / (s, y), 0 when undefined
};

/// BB1 on odd k, BB2 on even k for the alternating variants.
bool uses_bb1(TrialSource source, int k);
bool is_projected(TrialSource source);

/// Safeguarded BB step from s = v_k - v_{k-1}, y = g_k - g_{k-1}.
TrialStep bb_trial(const BBHistory& hist, const UnitVector& v, const GridFunction& g, const GramOperator& G,
                   bool bb1, const RuleParams& params);

/// Safeguarded projected BB step from s = -alpha_{k-1} P_v g_{k-1},
/// y = g_k - P_v g_{k-1}.
TrialStep pbb_trial(const BBHistory& hist, const UnitVector& v, const GridFunction& g, const GramOperator& G,
                    bool bb1, const RuleParams& params);

/// lambda_k for outer iteration k: lambda0 for Fixed or k == 0, else the
/// selected BB variant.
TrialStep trial_step(TrialSource source, int k, const std::optional<BBHistory>& hist, const UnitVector& v,
                     const GridFunction& g, const GramOperator& G, const RuleParams& params);

}  // namespace saddle
