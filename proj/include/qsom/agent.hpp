#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "qsom/map_grid.hpp"
#include "qsom/qtable.hpp"
#include "qsom/rng.hpp"

namespace qsom {

/// Either flavor of map training: SomParams selects the QSOM rules,
/// DsomParams the QDSOM rules. Both maps of one agent must share the flavor.
using MapParams = std::variant<SomParams, DsomParams>;

enum class NoiseMethod {
  Gaussian,        // N(0, noise_param), noise_param is the variance
  EpsilonUniform,  // Uniform[-noise_param, +noise_param]
};

struct AgentHyper {
  double q_learning_rate = 0.6;
  double discount = 0.9;
  double boltzmann_tau = 0.4;
  NoiseMethod noise_method = NoiseMethod::Gaussian;
  double noise_param = 0.06;
  MapParams state_map_params = SomParams{0.5, 1.5};
  MapParams action_map_params = SomParams{0.2, 0.8};

  bool is_dsom() const { return std::holds_alternative<DsomParams>(state_map_params); }
  void validate() const;
};

/// Everything decide() chose at one step; learn() consumes it verbatim.
struct DecisionTrace {
  std::vector<double> observations;  // input the state hypothesis came from
  std::size_t state_index = 0;       // BMU of the state map at decision time
  std::size_t action_index = 0;      // Boltzmann-drawn action neuron
  std::vector<double> action;        // perturbed prototype, clamped to [0,1]
};

/// Boltzmann distribution over interests: p_j proportional to
/// exp(interests_j / tau), computed with max subtraction so large interests
/// cannot overflow. Probabilities sum to 1.
std::vector<double> boltzmann_probabilities(std::span<const double> interests, double tau);

/// Adds exploration noise to an action prototype, one independent draw per
/// dimension, and clamps every coordinate to [0,1].
std::vector<double> perturb_action(std::span<const double> prototype, NoiseMethod method,
                                   double param, Rng& rng);

/// Whether the perturbed action beat the memorized interest of the chosen
/// prototype: reward + discount * max(next_interests) > q_current, strictly.
bool improvement_test(double reward, double discount, std::span<const double> next_interests,
                      double q_current);

/// One learner: a state map discretizing observations, an action map holding
/// candidate action prototypes, the Q-Table linking them, and a private
/// random stream. decide() and learn() must alternate on the same mind.
class AgentMind {
 public:
  /// Takes ownership of pre-built maps (useful for scripted tests).
  AgentMind(MapGrid state_map, MapGrid action_map, AgentHyper hyper, std::uint64_t seed);

  /// Uniform-random prototypes drawn from the mind's own stream.
  static AgentMind make_random(std::size_t state_rows, std::size_t state_cols,
                               std::size_t observation_dim, std::size_t action_rows,
                               std::size_t action_cols, std::size_t action_dim,
                               const AgentHyper& hyper, std::uint64_t seed);

  const MapGrid& state_map() const { return state_map_; }
  const MapGrid& action_map() const { return action_map_; }
  const QTable& qtable() const { return qtable_; }
  QTable& qtable() { return qtable_; }
  const AgentHyper& hyper() const { return hyper_; }

  /// Picks an action for the given observations: state hypothesis via BMU,
  /// action neuron via Boltzmann over its interests, then noise perturbation.
  DecisionTrace decide(std::span<const double> observations);

  /// Updates action map (only if the improvement test passes), Q-Table (all
  /// state/action pairs, weighted by the two lattice neighborhoods), and
  /// state map, from the trace of the immediately preceding decide().
  void learn(const DecisionTrace& trace, std::span<const double> next_observations,
             double reward);

 private:
  std::vector<double> state_neighborhood(std::size_t center, std::span<const double> input) const;
  std::vector<double> action_neighborhood(std::size_t center, std::span<const double> input) const;

  Rng rng_;
  MapGrid state_map_;
  MapGrid action_map_;
  QTable qtable_;
  AgentHyper hyper_;
  // Gaussian lattice weights are input-independent, so for the SOM flavor
  // they are tabulated once per map (row = center neuron).
  std::vector<std::vector<double>> state_gauss_rows_;
  std::vector<std::vector<double>> action_gauss_rows_;
};

}  // namespace qsom
