#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "qsom/agent.hpp"
#include "qsom/rewards.hpp"
#include "qsom/smart_grid.hpp"

namespace qsom {

enum class Algorithm { Qsom, Qdsom };
enum class EnvSize { Small, Medium };

/// Learned runs the Q-(D)SOM agents; UniformRandom bypasses them and draws
/// every action parameter uniformly, as the no-learning baseline.
enum class PolicyMode { Learned, UniformRandom };

Algorithm parse_algorithm(std::string_view token);
std::string_view algorithm_name(Algorithm algo);
EnvSize parse_env_size(std::string_view token);
std::string_view env_size_name(EnvSize size);
PolicyMode parse_policy_mode(std::string_view token);
std::string_view policy_mode_name(PolicyMode policy);

struct MapShape {
  std::size_t rows = 0;
  std::size_t cols = 0;
};

/// Everything one seeded run depends on.
struct ScenarioSpec {
  ProfileMode mode = ProfileMode::Daily;
  EnvSize size = EnvSize::Small;
  RewardKind reward = RewardKind::Adaptability2;
  Algorithm algorithm = Algorithm::Qsom;
  PolicyMode policy = PolicyMode::Learned;
  std::size_t steps = 10000;
  std::uint64_t master_seed = 0;
  MapShape state_map_shape{12, 12};
  MapShape action_map_shape{3, 3};
  AgentHyper hyper;  // filled per algorithm by build_scenario
  EnvConfig env;     // profiles expanded to one entry per agent
};

/// Assembles a canonical scenario: the size's agent roster (small: 20
/// Household + 5 Office + 1 School; medium: 80 + 19 + 1), built-in profiles
/// for the mode, and the algorithm's tuned hyperparameter defaults.
ScenarioSpec build_scenario(ProfileMode mode, EnvSize size, RewardKind reward, Algorithm algo,
                            std::uint64_t seed);

/// Applies one `name=value` override onto a spec. Names cover the agent
/// hyperparameters, map shapes and environment constants; unknown names or
/// names that do not apply to the spec's algorithm raise ConfigError.
void apply_override(ScenarioSpec& spec, const std::string& name, const std::string& value);

/// The override names apply_override accepts, for help text and validation.
const std::vector<std::string>& override_names();

}  // namespace qsom
