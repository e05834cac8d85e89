#pragma once

#include <cstddef>
#include <string_view>

#include "qsom/smart_grid.hpp"
#include "qsom/stats.hpp"

namespace qsom {

enum class RewardKind {
  Equity,
  Overconsumption,
  Comfort,
  MultiObjSum,
  MultiObjProd,
  Adaptability1,
  Adaptability2,
};

/// Steps at which the adaptability rewards change definition.
inline constexpr std::size_t kAdaptabilitySwitch1 = 2000;
inline constexpr std::size_t kAdaptabilitySwitch2 = 6000;

RewardKind parse_reward_kind(std::string_view token);
std::string_view reward_kind_name(RewardKind kind);

/// Society-level over-consumption component, in [0,1]:
/// 1 - OC / sum_a(consumed_a + stored_a), with a zero denominator reading
/// as no over-consumption (value 1).
double oc_global(const StepSnapshot& snapshot);

/// Difference form of the over-consumption reward: the society component
/// minus the same component in a hypothetical grid where the agent's
/// consumption and storage never happened (its removed over-consumption is
/// floored at zero). Can be negative.
double oc_difference(const StepSnapshot& snapshot, std::size_t agent);

/// Society-level equity component: 1 - hoover(comforts).
double equity_global(const StepSnapshot& snapshot);

/// Difference form of the equity reward: society equity minus the equity of
/// the population without the agent's comfort entry.
double equity_difference(const StepSnapshot& snapshot, std::size_t agent);

double mean_comfort(const StepSnapshot& snapshot);

/// The agent's individual reward for the step, per the selected definition.
/// The adaptability kinds switch formula at steps 2000 and 6000.
double agent_reward(RewardKind kind, const StepSnapshot& snapshot, std::size_t agent,
                    std::size_t t);

/// The society-wide counterpart used for scoring, always in [0,1].
double global_reward(RewardKind kind, const StepSnapshot& snapshot, std::size_t t);

}  // namespace qsom
