#include "qsom/scenario.hpp"

#include <cstddef>
#include <stdexcept>

#include "qsom/errors.hpp"

namespace qsom {

Algorithm parse_algorithm(std::string_view token) {
  if (token == "qsom") return Algorithm::Qsom;
  if (token == "qdsom") return Algorithm::Qdsom;
  throw ConfigError("unknown algorithm '" + std::string(token) + "' (expected qsom|qdsom)");
}

std::string_view algorithm_name(Algorithm algo) {
  return algo == Algorithm::Qsom ? "qsom" : "qdsom";
}

EnvSize parse_env_size(std::string_view token) {
  if (token == "small") return EnvSize::Small;
  if (token == "medium") return EnvSize::Medium;
  throw ConfigError("unknown size '" + std::string(token) + "' (expected small|medium)");
}

std::string_view env_size_name(EnvSize size) {
  return size == EnvSize::Small ? "small" : "medium";
}

PolicyMode parse_policy_mode(std::string_view token) {
  if (token == "learned") return PolicyMode::Learned;
  if (token == "random") return PolicyMode::UniformRandom;
  throw ConfigError("unknown policy '" + std::string(token) + "' (expected learned|random)");
}

std::string_view policy_mode_name(PolicyMode policy) {
  return policy == PolicyMode::Learned ? "learned" : "random";
}

namespace {

AgentHyper default_hyper(Algorithm algo) {
  AgentHyper hyper;
  if (algo == Algorithm::Qsom) {
    hyper.q_learning_rate = 0.6;
    hyper.discount = 0.9;
    hyper.boltzmann_tau = 0.4;
    hyper.noise_method = NoiseMethod::Gaussian;
    hyper.noise_param = 0.06;
    hyper.state_map_params = SomParams{0.5, 1.5};
    hyper.action_map_params = SomParams{0.2, 0.8};
  } else {
    hyper.q_learning_rate = 0.8;
    hyper.discount = 0.95;
    hyper.boltzmann_tau = 0.6;
    hyper.noise_method = NoiseMethod::Gaussian;
    hyper.noise_param = 0.09;
    hyper.state_map_params = DsomParams{0.8, 1.0};
    hyper.action_map_params = DsomParams{0.7, 1.0};
  }
  return hyper;
}

}  // namespace

ScenarioSpec build_scenario(ProfileMode mode, EnvSize size, RewardKind reward, Algorithm algo,
                            std::uint64_t seed) {
  ScenarioSpec spec;
  spec.mode = mode;
  spec.size = size;
  spec.reward = reward;
  spec.algorithm = algo;
  spec.master_seed = seed;
  spec.hyper = default_hyper(algo);

  const std::size_t households = size == EnvSize::Small ? 20 : 80;
  const std::size_t offices = size == EnvSize::Small ? 5 : 19;
  const std::size_t schools = 1;

  spec.env.mode = mode;
  const BuildingProfile household = builtin_profile(Building::Household, mode);
  const BuildingProfile office = builtin_profile(Building::Office, mode);
  const BuildingProfile school = builtin_profile(Building::School, mode);
  spec.env.profiles.reserve(households + offices + schools);
  for (std::size_t i = 0; i < households; ++i) spec.env.profiles.push_back(household);
  for (std::size_t i = 0; i < offices; ++i) spec.env.profiles.push_back(office);
  for (std::size_t i = 0; i < schools; ++i) spec.env.profiles.push_back(school);
  return spec;
}

namespace {

double parse_number(const std::string& name, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("override " + name + ": '" + value + "' is not a number");
  }
}

std::size_t parse_count(const std::string& name, const std::string& value) {
  const double v = parse_number(name, value);
  if (v < 1.0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
    throw ConfigError("override " + name + ": expected a positive integer");
  }
  return static_cast<std::size_t>(v);
}

SomParams& som_params(ScenarioSpec& spec, MapParams& params, const std::string& name) {
  if (auto* p = std::get_if<SomParams>(&params)) return *p;
  throw ConfigError("override " + name + " only applies to the qsom algorithm, not " +
                    std::string(algorithm_name(spec.algorithm)));
}

DsomParams& dsom_params(ScenarioSpec& spec, MapParams& params, const std::string& name) {
  if (auto* p = std::get_if<DsomParams>(&params)) return *p;
  throw ConfigError("override " + name + " only applies to the qdsom algorithm, not " +
                    std::string(algorithm_name(spec.algorithm)));
}

}  // namespace

void apply_override(ScenarioSpec& spec, const std::string& name, const std::string& value) {
  if (name == "q_learning_rate") {
    spec.hyper.q_learning_rate = parse_number(name, value);
  } else if (name == "discount") {
    spec.hyper.discount = parse_number(name, value);
  } else if (name == "boltzmann_tau") {
    spec.hyper.boltzmann_tau = parse_number(name, value);
  } else if (name == "noise_method") {
    if (value == "gaussian") {
      spec.hyper.noise_method = NoiseMethod::Gaussian;
    } else if (value == "uniform") {
      spec.hyper.noise_method = NoiseMethod::EpsilonUniform;
    } else {
      throw ConfigError("override noise_method: expected gaussian|uniform");
    }
  } else if (name == "noise_param") {
    spec.hyper.noise_param = parse_number(name, value);
  } else if (name == "state_map_rows") {
    spec.state_map_shape.rows = parse_count(name, value);
  } else if (name == "state_map_cols") {
    spec.state_map_shape.cols = parse_count(name, value);
  } else if (name == "action_map_rows") {
    spec.action_map_shape.rows = parse_count(name, value);
  } else if (name == "action_map_cols") {
    spec.action_map_shape.cols = parse_count(name, value);
  } else if (name == "state_learning_rate") {
    std::visit([&](auto& p) { p.learning_rate = parse_number(name, value); },
               spec.hyper.state_map_params);
  } else if (name == "action_learning_rate") {
    std::visit([&](auto& p) { p.learning_rate = parse_number(name, value); },
               spec.hyper.action_map_params);
  } else if (name == "state_width") {
    som_params(spec, spec.hyper.state_map_params, name).neighborhood_width =
        parse_number(name, value);
  } else if (name == "action_width") {
    som_params(spec, spec.hyper.action_map_params, name).neighborhood_width =
        parse_number(name, value);
  } else if (name == "state_elasticity") {
    dsom_params(spec, spec.hyper.state_map_params, name).elasticity = parse_number(name, value);
  } else if (name == "action_elasticity") {
    dsom_params(spec, spec.hyper.action_map_params, name).elasticity = parse_number(name, value);
  } else if (name == "scarcity_factor") {
    spec.env.scarcity_factor = parse_number(name, value);
  } else if (name == "buy_price") {
    spec.env.buy_price = parse_number(name, value);
  } else if (name == "sell_price") {
    spec.env.sell_price = parse_number(name, value);
  } else if (name == "payoff_scale") {
    spec.env.payoff_scale = parse_number(name, value);
  } else if (name == "steps") {
    spec.steps = parse_count(name, value);
  } else {
    throw ConfigError("unknown override parameter '" + name + "'");
  }
}

const std::vector<std::string>& override_names() {
  static const std::vector<std::string> names = {
      "q_learning_rate", "discount",           "boltzmann_tau",
      "noise_method",    "noise_param",        "state_map_rows",
      "state_map_cols",  "action_map_rows",    "action_map_cols",
      "state_learning_rate", "action_learning_rate", "state_width",
      "action_width",    "state_elasticity",   "action_elasticity",
      "scarcity_factor", "buy_price",          "sell_price",
      "payoff_scale",    "steps",
  };
  return names;
}

}  // namespace qsom
