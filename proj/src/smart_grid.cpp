#include "qsom/smart_grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "qsom/errors.hpp"
#include "qsom/stats.hpp"

namespace qsom {

void EnvConfig::validate() const {
  if (profiles.empty()) throw ConfigError("environment needs at least one agent");
  if (!(scarcity_factor > 0.0 && scarcity_factor <= 1.5)) {
    throw ConfigError("scarcity_factor must be in (0, 1.5]");
  }
  if (buy_price < 0.0 || sell_price < 0.0) throw ConfigError("prices must be nonnegative");
  if (!(payoff_scale > 0.0)) throw ConfigError("payoff_scale must be positive");
  for (const auto& profile : profiles) profile.validate(mode);
}

void apply_config_file(EnvConfig& config, const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config file '" + file.string() + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file '" + file.string() + "': " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config file '" + file.string() + "': expected an object");

  for (const auto& [key, value] : doc.items()) {
    if (key == "scarcity_factor") {
      config.scarcity_factor = value.get<double>();
    } else if (key == "buy_price") {
      config.buy_price = value.get<double>();
    } else if (key == "sell_price") {
      config.sell_price = value.get<double>();
    } else if (key == "payoff_scale") {
      config.payoff_scale = value.get<double>();
    } else if (key == "profiles") {
      for (const auto& [name, overrides] : value.items()) {
        bool matched = false;
        for (auto& profile : config.profiles) {
          if (profile.name != name) continue;
          matched = true;
          for (const auto& [field, v] : overrides.items()) {
            if (field == "action_range_wh") {
              profile.action_range_wh = v.get<double>();
            } else if (field == "battery_capacity_wh") {
              profile.battery_capacity_wh = v.get<double>();
            } else if (field == "solar_production_wh") {
              profile.solar_production_wh = v.get<double>();
            } else {
              throw ConfigError("config file: unknown profile field '" + field + "'");
            }
          }
        }
        if (!matched) {
          throw ConfigError("config file: no profile named '" + name + "' in this scenario");
        }
      }
    } else {
      throw ConfigError("config file: unknown key '" + key + "'");
    }
  }
}

std::vector<double> StepSnapshot::comforts() const {
  std::vector<double> values(agents.size());
  for (std::size_t a = 0; a < agents.size(); ++a) values[a] = agents[a].comfort;
  return values;
}

ScaledAction scale_action(std::span<const double> params, double range_wh) {
  if (params.size() != kActionDim) {
    throw ContractViolation("scale_action: expected " + std::to_string(kActionDim) +
                            " action parameters, got " + std::to_string(params.size()));
  }
  for (double p : params) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ContractViolation("scale_action: action parameters must be in [0,1]");
    }
  }
  return ScaledAction{
      .consume_grid_wh = params[0] * range_wh,
      .store_wh = params[1] * range_wh,
      .consume_battery_wh = params[2] * range_wh,
      .give_wh = params[3] * range_wh,
      .buy_wh = params[4] * range_wh,
      .sell_wh = params[5] * range_wh,
  };
}

namespace {

double total_need_at(const EnvConfig& config, std::size_t hour_index) {
  double total = 0.0;
  for (const auto& profile : config.profiles) total += profile.needs_wh[hour_index];
  return total;
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// Fills the indicator block of a snapshot from its per-agent flows and raw
// aggregates. Autonomy needs the buy/sell volumes, which the snapshot does
// not keep, so the caller sets it afterwards.
void finalize_snapshot(StepSnapshot& snap) {
  const auto comforts = snap.comforts();
  snap.equity = clamp01(1.0 - hoover(comforts));
  snap.wellbeing = median(comforts);

  const double half_median = 0.5 * snap.wellbeing;
  std::size_t excluded = 0;
  for (double c : comforts) {
    if (c < half_median) ++excluded;
  }
  snap.exclusion = static_cast<double>(excluded) / static_cast<double>(comforts.size());

  snap.pool_norm = clamp01(snap.pool_wh / snap.total_need_wh);
  snap.oc_norm = clamp01(snap.overconsumption_wh / snap.total_need_wh);
  snap.waste_norm = clamp01(snap.waste_wh / snap.total_need_wh);
}

}  // namespace

EnvState init_env(const EnvConfig& config, std::uint64_t /*seed*/) {
  config.validate();
  EnvState state;
  state.t = 0;
  state.battery_wh.reserve(config.agent_count());
  for (const auto& profile : config.profiles) {
    state.battery_wh.push_back(0.5 * profile.battery_capacity_wh);
  }
  state.payoff.assign(config.agent_count(), 0.0);
  state.current_pool_wh = config.scarcity_factor * total_need_at(config, 0);
  return state;
}

StepSnapshot initial_snapshot(const EnvConfig& config, const EnvState& state) {
  const std::size_t hour_index = state.t % profile_period(config.mode);
  StepSnapshot snap;
  snap.t = state.t;
  snap.hour_of_day = static_cast<unsigned>(hour_index % 24);
  snap.total_need_wh = total_need_at(config, hour_index);
  snap.pool_wh = config.scarcity_factor * snap.total_need_wh;
  snap.agents.resize(config.agent_count());
  for (std::size_t a = 0; a < config.agent_count(); ++a) {
    snap.agents[a].battery_fraction =
        state.battery_wh[a] / config.profiles[a].battery_capacity_wh;
  }
  finalize_snapshot(snap);
  // Nothing consumed and nothing traded yet.
  snap.autonomy = 1.0;
  return snap;
}

StepSnapshot env_step(const EnvConfig& config, EnvState& state,
                      std::span<const ScaledAction> joint) {
  const std::size_t n = config.agent_count();
  if (joint.size() != n) {
    throw ContractViolation("env_step: " + std::to_string(joint.size()) + " actions for " +
                            std::to_string(n) + " agents");
  }

  const std::size_t hour_index = state.t % profile_period(config.mode);

  StepSnapshot snap;
  snap.t = state.t;
  snap.hour_of_day = static_cast<unsigned>(hour_index % 24);
  snap.total_need_wh = total_need_at(config, hour_index);
  snap.agents.resize(n);

  // Battery outflows first: an agent cannot discharge more than it holds.
  // Conflicting requests shrink proportionally, which keeps the resolution
  // independent of agent order.
  std::vector<ScaledAction> acts(joint.begin(), joint.end());
  for (std::size_t a = 0; a < n; ++a) {
    const double requested = acts[a].consume_battery_wh + acts[a].give_wh + acts[a].sell_wh;
    if (requested > state.battery_wh[a] && requested > 0.0) {
      const double scale = state.battery_wh[a] / requested;
      acts[a].consume_battery_wh *= scale;
      acts[a].give_wh *= scale;
      acts[a].sell_wh *= scale;
    }
  }

  double gifts = 0.0;
  for (const auto& act : acts) gifts += act.give_wh;
  snap.pool_wh = config.scarcity_factor * snap.total_need_wh + gifts;

  double grid_draw = 0.0;  // pool demand: direct consumption plus storage
  double bought = 0.0, sold = 0.0;
  double consumed_total = 0.0, stored_total = 0.0;

  for (std::size_t a = 0; a < n; ++a) {
    const auto& act = acts[a];
    const auto& profile = config.profiles[a];
    AgentFlows& flows = snap.agents[a];

    flows.consumed_wh = act.consume_grid_wh + act.consume_battery_wh + act.buy_wh;
    flows.stored_wh = act.store_wh;

    const double inflow = act.store_wh + profile.solar_production_wh;
    const double outflow = act.consume_battery_wh + act.give_wh + act.sell_wh;
    const double raw = state.battery_wh[a] + inflow - outflow;
    const double waste = std::max(0.0, raw - profile.battery_capacity_wh);
    state.battery_wh[a] = std::clamp(raw, 0.0, profile.battery_capacity_wh);
    snap.waste_wh += waste;

    flows.payoff_delta = act.sell_wh * config.sell_price - act.buy_wh * config.buy_price;
    state.payoff[a] += flows.payoff_delta;
    flows.battery_fraction = state.battery_wh[a] / profile.battery_capacity_wh;

    const double need = profile.needs_wh[hour_index];
    flows.comfort = std::min(1.0, flows.consumed_wh / need);

    grid_draw += act.consume_grid_wh + act.store_wh;
    bought += act.buy_wh;
    sold += act.sell_wh;
    consumed_total += flows.consumed_wh;
    stored_total += flows.stored_wh;
  }

  snap.overconsumption_wh = std::max(0.0, grid_draw - snap.pool_wh);

  finalize_snapshot(snap);
  const double moved = consumed_total + stored_total + bought + sold;
  snap.autonomy = moved > 0.0 ? clamp01(1.0 - (bought + sold) / moved) : 1.0;

  state.t += 1;
  const std::size_t next_hour = state.t % profile_period(config.mode);
  state.current_pool_wh = config.scarcity_factor * total_need_at(config, next_hour);
  return snap;
}

std::vector<double> observe(const EnvConfig& config, const StepSnapshot& snapshot,
                            const EnvState& state, std::size_t agent) {
  if (agent >= snapshot.agents.size() || agent >= state.payoff.size()) {
    throw ContractViolation("observe: unknown agent " + std::to_string(agent));
  }
  const AgentFlows& flows = snapshot.agents[agent];
  return {
      snapshot.hour_of_day / 24.0,
      snapshot.pool_norm,
      snapshot.equity,
      snapshot.waste_norm,
      snapshot.autonomy,
      snapshot.exclusion,
      snapshot.wellbeing,
      snapshot.oc_norm,
      flows.battery_fraction,
      flows.comfort,
      logistic(state.payoff[agent] / config.payoff_scale),
  };
}

}  // namespace qsom
