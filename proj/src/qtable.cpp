#include "qsom/qtable.hpp"

#include <algorithm>
#include <string>

#include "qsom/errors.hpp"

namespace qsom {

QTable::QTable(std::size_t states, std::size_t actions)
    : states_(states), actions_(actions), values_(states * actions, 0.0) {
  if (states_ == 0 || actions_ == 0) {
    throw InvalidInput("QTable: states and actions must be positive");
  }
}

double QTable::at(std::size_t s, std::size_t a) const {
  return const_cast<QTable&>(*this).at(s, a);
}

double& QTable::at(std::size_t s, std::size_t a) {
  if (s >= states_ || a >= actions_) {
    throw InvalidInput("QTable::at: index (" + std::to_string(s) + ", " + std::to_string(a) +
                       ") out of range");
  }
  return values_[s * actions_ + a];
}

std::span<const double> QTable::row(std::size_t s) const {
  if (s >= states_) throw InvalidInput("QTable::row: state out of range");
  return {values_.data() + s * actions_, actions_};
}

double QTable::row_max(std::size_t s) const {
  const auto r = row(s);
  return *std::max_element(r.begin(), r.end());
}

}  // namespace qsom
