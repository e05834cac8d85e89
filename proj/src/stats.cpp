#include "qsom/stats.hpp"

#include <algorithm>
#include <cmath>

#include "qsom/errors.hpp"

namespace qsom {

double hoover(std::span<const double> values) {
  if (values.empty()) throw InvalidInput("hoover: empty value list");
  double total = 0.0;
  for (double v : values) {
    if (v < 0.0) throw InvalidInput("hoover: negative value");
    total += v;
  }
  if (total == 0.0) return 0.0;
  const double avg = total / static_cast<double>(values.size());
  double spread = 0.0;
  for (double v : values) spread += std::abs(v - avg);
  return spread / (2.0 * total);
}

double median(std::span<const double> values) {
  if (values.empty()) throw InvalidInput("median: empty value list");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  if (n % 2 == 1) return sorted[n / 2];
  return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

double mean(std::span<const double> values) {
  if (values.empty()) throw InvalidInput("mean: empty value list");
  double total = 0.0;
  for (double v : values) total += v;
  return total / static_cast<double>(values.size());
}

double logistic(double x) {
  return 1.0 / (1.0 + std::exp(-x));
}

}  // namespace qsom
