#pragma once

#include <deque>
#include <string>

namespace saddle {

enum class StepRule { Exact, Armijo, ZH, GLL };

std::string to_string(StepRule rule);

struct RuleParams {
  double sigma = 1e-4;
  double rho = 0.2;
  int M = 10;
  double eta = 0.85;  ///< constant ZH weight, eta_min = eta_max = eta
  double lambda_min = 1e-6;
  double lambda_max = 10.0;
  double lambda0 = 0.1;  ///< fixed trial step and BB fallback
  int m_max = 60;

  /// Throws InputError naming the first violated range.
  void validate() const;
};

struct ZHState {
  double Q = 1.0;
  double C = 0.0;
};

/// Q' = eta Q + 1, C' = (eta Q C + E_next) / Q'.
ZHState update_zh_state(ZHState state, double eta, double E_next);

/// Reference value R_k for the sufficient-decrease test of each rule.
///   Exact, Armijo: E_k
///   ZH:            C_k
///   GLL:           max of the last min(M, k+1) energies
class RuleState {
 public:
  RuleState(StepRule rule, const RuleParams& params, double E0);

  StepRule rule() const { return rule_; }
  double reference_value(double E_k) const;
  /// Records E_{k+1} after an accepted step.
  void advance(double E_next);

  const ZHState& zh() const { return zh_; }
  const std::deque<double>& window() const { return window_; }

 private:
  StepRule rule_;
  RuleParams params_;
  ZHState zh_;
  std::deque<double> window_;
};

}  // namespace saddle
