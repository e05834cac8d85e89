#include "qsom/rewards.hpp"

#include <algorithm>
#include <string>

#include "qsom/errors.hpp"

namespace qsom {

RewardKind parse_reward_kind(std::string_view token) {
  if (token == "equity") return RewardKind::Equity;
  if (token == "overconsumption") return RewardKind::Overconsumption;
  if (token == "comfort") return RewardKind::Comfort;
  if (token == "multiobj-sum") return RewardKind::MultiObjSum;
  if (token == "multiobj-prod") return RewardKind::MultiObjProd;
  if (token == "adaptability1") return RewardKind::Adaptability1;
  if (token == "adaptability2") return RewardKind::Adaptability2;
  throw ConfigError("unknown reward '" + std::string(token) +
                    "' (expected equity|overconsumption|comfort|multiobj-sum|multiobj-prod|"
                    "adaptability1|adaptability2)");
}

std::string_view reward_kind_name(RewardKind kind) {
  switch (kind) {
    case RewardKind::Equity: return "equity";
    case RewardKind::Overconsumption: return "overconsumption";
    case RewardKind::Comfort: return "comfort";
    case RewardKind::MultiObjSum: return "multiobj-sum";
    case RewardKind::MultiObjProd: return "multiobj-prod";
    case RewardKind::Adaptability1: return "adaptability1";
    case RewardKind::Adaptability2: return "adaptability2";
  }
  return "?";
}

namespace {

void check_agent(const StepSnapshot& snapshot, std::size_t agent) {
  if (agent >= snapshot.agents.size()) {
    throw ContractViolation("reward: unknown agent " + std::to_string(agent));
  }
}

double activity_total(const StepSnapshot& snapshot) {
  double total = 0.0;
  for (const auto& flows : snapshot.agents) total += flows.consumed_wh + flows.stored_wh;
  return total;
}

// Ratios with an empty denominator read as 0: no activity, no over-use.
double safe_ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

}  // namespace

double oc_global(const StepSnapshot& snapshot) {
  return 1.0 - safe_ratio(snapshot.overconsumption_wh, activity_total(snapshot));
}

double oc_difference(const StepSnapshot& snapshot, std::size_t agent) {
  check_agent(snapshot, agent);
  const double total = activity_total(snapshot);
  const double own = snapshot.agents[agent].consumed_wh + snapshot.agents[agent].stored_wh;
  const double oc_without =
      std::max(0.0, snapshot.overconsumption_wh - own);  // OC cannot be negative
  const double with_agent = 1.0 - safe_ratio(snapshot.overconsumption_wh, total);
  const double without_agent = 1.0 - safe_ratio(oc_without, total - own);
  return with_agent - without_agent;
}

double equity_global(const StepSnapshot& snapshot) {
  return 1.0 - hoover(snapshot.comforts());
}

double equity_difference(const StepSnapshot& snapshot, std::size_t agent) {
  check_agent(snapshot, agent);
  auto comforts = snapshot.comforts();
  const double with_agent = 1.0 - hoover(comforts);
  comforts.erase(comforts.begin() + static_cast<std::ptrdiff_t>(agent));
  // A lone agent leaves an empty population behind; that population is
  // perfectly equal.
  const double without_agent = comforts.empty() ? 1.0 : 1.0 - hoover(comforts);
  return with_agent - without_agent;
}

double mean_comfort(const StepSnapshot& snapshot) {
  return mean(snapshot.comforts());
}

double agent_reward(RewardKind kind, const StepSnapshot& snapshot, std::size_t agent,
                    std::size_t t) {
  check_agent(snapshot, agent);
  switch (kind) {
    case RewardKind::Equity:
      return equity_difference(snapshot, agent);
    case RewardKind::Overconsumption:
      return oc_difference(snapshot, agent);
    case RewardKind::Comfort:
      return snapshot.agents[agent].comfort;
    case RewardKind::MultiObjSum:
      return 0.8 * oc_difference(snapshot, agent) + 0.2 * snapshot.agents[agent].comfort;
    case RewardKind::MultiObjProd:
      // Both factors in [0,1]: the society over-consumption component times
      // the agent's own comfort.
      return oc_global(snapshot) * snapshot.agents[agent].comfort;
    case RewardKind::Adaptability1:
      if (t < kAdaptabilitySwitch1) return oc_difference(snapshot, agent);
      return 0.5 * (oc_difference(snapshot, agent) + equity_difference(snapshot, agent));
    case RewardKind::Adaptability2:
      if (t < kAdaptabilitySwitch1) return oc_difference(snapshot, agent);
      if (t < kAdaptabilitySwitch2) {
        return 0.5 * (oc_difference(snapshot, agent) + equity_difference(snapshot, agent));
      }
      return (oc_difference(snapshot, agent) + equity_difference(snapshot, agent) +
              snapshot.agents[agent].comfort) /
             3.0;
  }
  throw ContractViolation("agent_reward: unhandled reward kind");
}

double global_reward(RewardKind kind, const StepSnapshot& snapshot, std::size_t t) {
  switch (kind) {
    case RewardKind::Equity:
      return equity_global(snapshot);
    case RewardKind::Overconsumption:
      return oc_global(snapshot);
    case RewardKind::Comfort:
      return mean_comfort(snapshot);
    case RewardKind::MultiObjSum:
      return 0.8 * oc_global(snapshot) + 0.2 * mean_comfort(snapshot);
    case RewardKind::MultiObjProd:
      return oc_global(snapshot) * mean_comfort(snapshot);
    case RewardKind::Adaptability1:
      if (t < kAdaptabilitySwitch1) return oc_global(snapshot);
      return 0.5 * (oc_global(snapshot) + equity_global(snapshot));
    case RewardKind::Adaptability2:
      if (t < kAdaptabilitySwitch1) return oc_global(snapshot);
      if (t < kAdaptabilitySwitch2) return 0.5 * (oc_global(snapshot) + equity_global(snapshot));
      return (oc_global(snapshot) + equity_global(snapshot) + mean_comfort(snapshot)) / 3.0;
  }
  throw ContractViolation("global_reward: unhandled reward kind");
}

}  // namespace qsom
