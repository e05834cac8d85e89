#include "qsom/agent.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>
#include <utility>

#include "qsom/errors.hpp"

namespace qsom {

void AgentHyper::validate() const {
  if (!(q_learning_rate > 0.0 && q_learning_rate <= 1.0)) {
    throw InvalidInput("AgentHyper: q_learning_rate must be in (0,1]");
  }
  if (!(discount >= 0.0 && discount < 1.0)) {
    throw InvalidInput("AgentHyper: discount must be in [0,1)");
  }
  if (!(boltzmann_tau > 0.0)) {
    throw InvalidInput("AgentHyper: boltzmann_tau must be > 0");
  }
  if (!(noise_param >= 0.0)) {
    throw InvalidInput("AgentHyper: noise_param must be >= 0");
  }
  if (state_map_params.index() != action_map_params.index()) {
    throw InvalidInput("AgentHyper: state and action maps must share the SOM/DSOM flavor");
  }
}

std::vector<double> boltzmann_probabilities(std::span<const double> interests, double tau) {
  if (interests.empty()) throw InvalidInput("boltzmann_probabilities: empty interests");
  if (!(tau > 0.0)) throw InvalidInput("boltzmann_probabilities: tau must be > 0");
  const double top = *std::max_element(interests.begin(), interests.end());
  std::vector<double> probs(interests.size());
  double total = 0.0;
  for (std::size_t j = 0; j < interests.size(); ++j) {
    probs[j] = std::exp((interests[j] - top) / tau);
    total += probs[j];
  }
  for (double& p : probs) p /= total;
  return probs;
}

std::vector<double> perturb_action(std::span<const double> prototype, NoiseMethod method,
                                   double param, Rng& rng) {
  if (!(param >= 0.0)) throw InvalidInput("perturb_action: noise parameter must be >= 0");
  std::vector<double> action(prototype.begin(), prototype.end());
  if (param == 0.0) return action;
  const double stddev = std::sqrt(param);  // gaussian param is the variance
  for (double& v : action) {
    const double noise = method == NoiseMethod::Gaussian ? rng.next_gaussian(0.0, stddev)
                                                         : rng.next_uniform(-param, param);
    v = std::clamp(v + noise, 0.0, 1.0);
  }
  return action;
}

bool improvement_test(double reward, double discount, std::span<const double> next_interests,
                      double q_current) {
  if (next_interests.empty()) throw InvalidInput("improvement_test: empty next interests");
  const double best_next = *std::max_element(next_interests.begin(), next_interests.end());
  return reward + discount * best_next > q_current;
}

namespace {

std::size_t sample_index(std::span<const double> probs, Rng& rng) {
  const double u = rng.next_double();
  double cum = 0.0;
  for (std::size_t j = 0; j < probs.size(); ++j) {
    cum += probs[j];
    if (u < cum) return j;
  }
  return probs.size() - 1;  // absorb rounding in the last bucket
}

std::vector<std::vector<double>> tabulate_gauss_rows(const MapGrid& grid, double width) {
  std::vector<std::vector<double>> rows(grid.size());
  for (std::size_t c = 0; c < grid.size(); ++c) rows[c] = gaussian_neighborhood(grid, c, width);
  return rows;
}

}  // namespace

AgentMind::AgentMind(MapGrid state_map, MapGrid action_map, AgentHyper hyper, std::uint64_t seed)
    : rng_(seed),
      state_map_(std::move(state_map)),
      action_map_(std::move(action_map)),
      qtable_(state_map_.size(), action_map_.size()),
      hyper_(std::move(hyper)) {
  hyper_.validate();
  if (const auto* sp = std::get_if<SomParams>(&hyper_.state_map_params)) {
    state_gauss_rows_ = tabulate_gauss_rows(state_map_, sp->neighborhood_width);
    action_gauss_rows_ =
        tabulate_gauss_rows(action_map_, std::get<SomParams>(hyper_.action_map_params).neighborhood_width);
  }
}

AgentMind AgentMind::make_random(std::size_t state_rows, std::size_t state_cols,
                                 std::size_t observation_dim, std::size_t action_rows,
                                 std::size_t action_cols, std::size_t action_dim,
                                 const AgentHyper& hyper, std::uint64_t seed) {
  Rng init(seed);
  MapGrid state = MapGrid::random(state_rows, state_cols, observation_dim, init);
  MapGrid action = MapGrid::random(action_rows, action_cols, action_dim, init);
  AgentMind mind(std::move(state), std::move(action), hyper, seed);
  mind.rng_ = init;  // continue after the prototype draws
  return mind;
}

DecisionTrace AgentMind::decide(std::span<const double> observations) {
  const std::size_t s = bmu(state_map_, observations);
  const auto probs = boltzmann_probabilities(qtable_.row(s), hyper_.boltzmann_tau);
  const std::size_t j = sample_index(probs, rng_);
  auto action = perturb_action(action_map_.prototype(j), hyper_.noise_method, hyper_.noise_param, rng_);
  DecisionTrace trace;
  trace.observations.assign(observations.begin(), observations.end());
  trace.state_index = s;
  trace.action_index = j;
  trace.action = std::move(action);
  return trace;
}

std::vector<double> AgentMind::state_neighborhood(std::size_t center,
                                                  std::span<const double> input) const {
  if (const auto* dp = std::get_if<DsomParams>(&hyper_.state_map_params)) {
    return dsom_neighborhood(state_map_, center, input, dp->elasticity);
  }
  return state_gauss_rows_[center];
}

std::vector<double> AgentMind::action_neighborhood(std::size_t center,
                                                   std::span<const double> input) const {
  if (const auto* dp = std::get_if<DsomParams>(&hyper_.action_map_params)) {
    return dsom_neighborhood(action_map_, center, input, dp->elasticity);
  }
  return action_gauss_rows_[center];
}

void AgentMind::learn(const DecisionTrace& trace, std::span<const double> next_observations,
                      double reward) {
  if (trace.state_index >= state_map_.size() || trace.action_index >= action_map_.size()) {
    throw ContractViolation("learn: trace indices do not fit this mind's maps");
  }
  if (trace.observations.size() != state_map_.dim() || trace.action.size() != action_map_.dim()) {
    throw ContractViolation("learn: trace vectors do not match this mind's map dimensions");
  }
  if (next_observations.size() != state_map_.dim()) {
    throw InvalidInput("learn: next observations have the wrong dimension");
  }
  // The maps have not moved since decide(), so the recorded state hypothesis
  // must still be the BMU of the recorded observations.
  assert(bmu(state_map_, trace.observations) == trace.state_index);

  const auto psi_state = state_neighborhood(trace.state_index, trace.observations);
  const auto psi_action = action_neighborhood(trace.action_index, trace.action);

  const std::size_t next_state = bmu(state_map_, next_observations);
  const double target = reward + hyper_.discount * qtable_.row_max(next_state);

  if (improvement_test(reward, hyper_.discount, qtable_.row(next_state),
                       qtable_.at(trace.state_index, trace.action_index))) {
    // The perturbed action beat the prototype's memorized interest: pull the
    // action map toward it, with the chosen neuron as forced BMU.
    if (const auto* dp = std::get_if<DsomParams>(&hyper_.action_map_params)) {
      dsom_update_toward(action_map_, trace.action, trace.action_index, *dp);
    } else {
      som_update_toward(action_map_, trace.action, trace.action_index,
                        std::get<SomParams>(hyper_.action_map_params));
    }
  }

  // Every (state, action) pair moves toward the target, scaled by how close
  // its neurons sit to the pair actually experienced.
  const double alpha = hyper_.q_learning_rate;
  for (std::size_t u = 0; u < qtable_.states(); ++u) {
    const double pu = psi_state[u];
    if (pu == 0.0) continue;
    for (std::size_t w = 0; w < qtable_.actions(); ++w) {
      double& q = qtable_.at(u, w);
      q += alpha * pu * psi_action[w] * (target - q);
    }
  }

  // The state map learns the observation that produced the hypothesis.
  if (const auto* dp = std::get_if<DsomParams>(&hyper_.state_map_params)) {
    dsom_update_toward(state_map_, trace.observations, trace.state_index, *dp);
  } else {
    som_update_toward(state_map_, trace.observations, trace.state_index,
                      std::get<SomParams>(hyper_.state_map_params));
  }
}

}  // namespace qsom
