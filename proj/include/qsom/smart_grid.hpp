#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "qsom/profiles.hpp"

namespace qsom {

inline constexpr std::size_t kObservationDim = 11;
inline constexpr std::size_t kActionDim = 6;

/// The simulated grid: one profile per agent, a shared hydropower pool sized
/// relative to the moment's total need, and a national grid to trade with.
struct EnvConfig {
  std::vector<BuildingProfile> profiles;  // one entry per agent
  ProfileMode mode = ProfileMode::Daily;
  double scarcity_factor = 0.75;   // pool = factor x total current need
  double buy_price = 0.0002;       // currency per Wh bought from the national grid
  double sell_price = 0.0001;      // currency per Wh sold to it
  double payoff_scale = 1000.0;    // logistic scale for the payoff observation

  std::size_t agent_count() const { return profiles.size(); }
  void validate() const;
};

/// Applies a JSON config document onto an EnvConfig: top-level keys
/// scarcity_factor, buy_price, sell_price, payoff_scale, plus a "profiles"
/// object mapping profile names to overrides of action_range_wh,
/// battery_capacity_wh and solar_production_wh. Unknown keys are errors.
void apply_config_file(EnvConfig& config, const std::filesystem::path& file);

/// Mutable environment state. One step is one hour.
struct EnvState {
  std::size_t t = 0;                // completed steps
  std::vector<double> battery_wh;   // per agent, within [0, capacity]
  std::vector<double> payoff;       // per agent, cumulative currency
  double current_pool_wh = 0.0;     // pool for the upcoming step, before gifts
};

/// Per-agent slice of a step's outcome.
struct AgentFlows {
  double consumed_wh = 0.0;      // grid + battery + bought
  double stored_wh = 0.0;        // taken from the pool into the battery
  double comfort = 0.0;          // min(1, consumed / need)
  double battery_fraction = 0.0; // post-step charge / capacity
  double payoff_delta = 0.0;     // currency earned (sold - bought) this step
};

/// Frozen aggregates of one executed step; rewards and observations are pure
/// functions of this snapshot.
struct StepSnapshot {
  std::size_t t = 0;              // step index this snapshot describes
  unsigned hour_of_day = 0;       // 0..23
  double pool_wh = 0.0;           // hydropower + gifts available this step
  double overconsumption_wh = 0.0;
  double waste_wh = 0.0;          // battery overflow, summed over agents
  double total_need_wh = 0.0;     // normalizer: sum of needs at this hour
  std::vector<AgentFlows> agents;

  // Normalized indicators, all in [0,1].
  double equity = 1.0;       // 1 - hoover(comforts)
  double autonomy = 1.0;     // 1 - traded share of all energy moved
  double exclusion = 0.0;    // share of agents below half the median comfort
  double wellbeing = 0.0;    // median comfort
  double pool_norm = 0.0;
  double oc_norm = 0.0;
  double waste_norm = 0.0;

  std::vector<double> comforts() const;
};

/// An action vector scaled into Wh. Every field is in [0, action_range].
struct ScaledAction {
  double consume_grid_wh = 0.0;     // draw from the shared pool, to consume
  double store_wh = 0.0;            // draw from the shared pool, into battery
  double consume_battery_wh = 0.0;  // discharge battery, to consume
  double give_wh = 0.0;             // discharge battery into the shared pool
  double buy_wh = 0.0;              // national grid -> consumption
  double sell_wh = 0.0;             // battery -> national grid
};

/// Multiplies a [0,1]^6 action parameter vector by the agent's action range.
ScaledAction scale_action(std::span<const double> params, double range_wh);

/// Fresh state: batteries at half capacity, zero payoffs, pool precomputed
/// for the first hour. The environment itself is deterministic; the seed is
/// accepted for interface stability and provenance.
EnvState init_env(const EnvConfig& config, std::uint64_t seed);

/// The snapshot observations are computed from before anything happened:
/// zero flows at the upcoming hour. Gives the t=0 observations their input.
StepSnapshot initial_snapshot(const EnvConfig& config, const EnvState& state);

/// Executes one hour: clamps battery outflows to feasibility, moves energy,
/// settles trades, and freezes the step's aggregates. Advances state.t.
StepSnapshot env_step(const EnvConfig& config, EnvState& state,
                      std::span<const ScaledAction> joint);

/// The agent's 11 observations in [0,1]: eight shared (hour, pool, equity,
/// waste, autonomy, exclusion, well-being, over-consumption) then three local
/// (battery fraction, own comfort, squashed cumulative payoff).
std::vector<double> observe(const EnvConfig& config, const StepSnapshot& snapshot,
                            const EnvState& state, std::size_t agent);

}  // namespace qsom
