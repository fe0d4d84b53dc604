#include "saddle/rules.hpp"

#include "saddle/error.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace saddle {

std::string to_string(StepRule rule) {
  switch (rule) {
    case StepRule::Exact: return "exact";
    case StepRule::Armijo: return "armijo";
    case StepRule::ZH: return "zh";
    case StepRule::GLL: return "gll";
  }
  return "?";
}

void RuleParams::validate() const {
  auto fail = [](const std::string& what) { throw InputError(what); };
  if (!(sigma > 0.0 && sigma < 1.0)) fail(fmt::format("sigma must lie in (0,1), got {}", sigma));
  if (!(rho > 0.0 && rho < 1.0)) fail(fmt::format("rho must lie in (0,1), got {}", rho));
  if (M < 1) fail(fmt::format("M must be at least 1, got {}", M));
  if (!(eta >= 0.0 && eta <= 1.0)) fail(fmt::format("eta must lie in [0,1], got {}", eta));
  if (!(lambda_min > 0.0)) fail(fmt::format("lambda_min must be positive, got {}", lambda_min));
  if (!(lambda_min < lambda_max))
    fail(fmt::format("lambda_min must be smaller than lambda_max, got {} >= {}", lambda_min, lambda_max));
  if (!(lambda0 > 0.0)) fail(fmt::format("lambda0 must be positive, got {}", lambda0));
  if (m_max < 0) fail(fmt::format("m_max must be nonnegative, got {}", m_max));
}

ZHState update_zh_state(ZHState state, double eta, double E_next) {
  const double q = eta * state.Q + 1.0;
  return {q, (eta * state.Q * state.C + E_next) / q};
}

RuleState::RuleState(StepRule rule, const RuleParams& params, double E0)
    : rule_(rule), params_(params), zh_{1.0, E0}, window_{E0} {}

double RuleState::reference_value(double E_k) const {
  switch (rule_) {
    case StepRule::ZH: return zh_.C;
    case StepRule::GLL: return *std::max_element(window_.begin(), window_.end());
    default: return E_k;
  }
}

void RuleState::advance(double E_next) {
  zh_ = update_zh_state(zh_, params_.eta, E_next);
  window_.push_back(E_next);
  while (window_.size() > static_cast<std::size_t>(params_.M)) window_.pop_front();
}

}  // namespace saddle
