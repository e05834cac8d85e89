#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qsom {

/// Dense interest table indexed by (state neuron, action neuron), zero-
/// initialized. Row s holds the interests Q(s, .) of every discretized
/// action in state hypothesis s.
class QTable {
 public:
  QTable(std::size_t states, std::size_t actions);

  std::size_t states() const { return states_; }
  std::size_t actions() const { return actions_; }

  double at(std::size_t s, std::size_t a) const;
  double& at(std::size_t s, std::size_t a);

  std::span<const double> row(std::size_t s) const;

  /// V(s) = max_a Q(s, a).
  double row_max(std::size_t s) const;

  bool operator==(const QTable&) const = default;

 private:
  std::size_t states_, actions_;
  std::vector<double> values_;
};

}  // namespace qsom
