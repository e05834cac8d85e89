#include "qsom/runner.hpp"

#include <chrono>
#include <string>

#include "qsom/errors.hpp"
#include "qsom/rng.hpp"

namespace qsom {

namespace {

// Substream roles under one master seed.
constexpr std::uint32_t kMindRole = 0;
constexpr std::uint32_t kRandomPolicyRole = 1;

}  // namespace

RunResult run(const ScenarioSpec& spec) {
  const auto start = std::chrono::steady_clock::now();

  spec.env.validate();
  const std::size_t n = spec.env.agent_count();

  RunResult result;
  result.spec = spec;
  result.agent_rewards.assign(n, {});
  if (spec.steps == 0) {
    result.empty_run_warning = true;
    return result;
  }
  result.global_rewards.reserve(spec.steps);
  for (auto& series : result.agent_rewards) series.reserve(spec.steps);

  EnvState state = init_env(spec.env, spec.master_seed);

  std::vector<AgentMind> minds;
  std::vector<Rng> random_policies;
  if (spec.policy == PolicyMode::Learned) {
    minds.reserve(n);
    for (std::size_t a = 0; a < n; ++a) {
      minds.push_back(AgentMind::make_random(
          spec.state_map_shape.rows, spec.state_map_shape.cols, kObservationDim,
          spec.action_map_shape.rows, spec.action_map_shape.cols, kActionDim, spec.hyper,
          stream_seed(spec.master_seed, agent_stream(kMindRole, static_cast<std::uint32_t>(a)))));
    }
  } else {
    random_policies.reserve(n);
    for (std::size_t a = 0; a < n; ++a) {
      random_policies.emplace_back(
          stream_seed(spec.master_seed, agent_stream(kRandomPolicyRole, static_cast<std::uint32_t>(a))));
    }
  }

  StepSnapshot snapshot = initial_snapshot(spec.env, state);

  std::vector<DecisionTrace> traces(n);
  std::vector<ScaledAction> joint(n);

  for (std::size_t t = 0; t < spec.steps; ++t) {
    try {
      for (std::size_t a = 0; a < n; ++a) {
        if (spec.policy == PolicyMode::Learned) {
          const auto obs = observe(spec.env, snapshot, state, a);
          traces[a] = minds[a].decide(obs);
          joint[a] = scale_action(traces[a].action, spec.env.profiles[a].action_range_wh);
        } else {
          std::vector<double> params(kActionDim);
          for (double& p : params) p = random_policies[a].next_double();
          joint[a] = scale_action(params, spec.env.profiles[a].action_range_wh);
        }
      }

      snapshot = env_step(spec.env, state, joint);

      result.global_rewards.push_back(global_reward(spec.reward, snapshot, t));
      for (std::size_t a = 0; a < n; ++a) {
        const double r = agent_reward(spec.reward, snapshot, a, t);
        result.agent_rewards[a].push_back(r);
        if (spec.policy == PolicyMode::Learned) {
          minds[a].learn(traces[a], observe(spec.env, snapshot, state, a), r);
        }
      }
    } catch (const std::exception& e) {
      throw RunError("run failed at step " + std::to_string(t) + ": " + e.what());
    }
  }

  result.final_minds = std::move(minds);
  result.score = score(result);
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

double score(const RunResult& result) {
  if (result.global_rewards.empty()) throw InvalidInput("score: empty global reward series");
  double total = 0.0;
  for (double g : result.global_rewards) total += g;
  return total / static_cast<double>(result.global_rewards.size());
}

std::vector<double> moving_average(std::span<const double> series, std::size_t window) {
  if (window == 0) throw InvalidInput("moving_average: window must be >= 1");
  std::vector<double> out(series.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    acc += series[i];
    if (i >= window) acc -= series[i - window];
    const std::size_t count = std::min(window, i + 1);
    out[i] = acc / static_cast<double>(count);
  }
  return out;
}

}  // namespace qsom
