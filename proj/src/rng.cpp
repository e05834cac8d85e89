#include "qsom/rng.hpp"

#include <cmath>
#include <numbers>

#include "qsom/errors.hpp"

namespace qsom {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}
}  // namespace

std::uint64_t Rng::next_u64() {
  state_ += kGolden;
  return finalize(state_);
}

double Rng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_uniform(double lo, double hi) {
  return lo + (hi - lo) * next_double();
}

double Rng::next_gaussian(double mean, double stddev) {
  double u1 = next_double();
  while (u1 <= 0.0) u1 = next_double();  // log(0) guard
  const double u2 = next_double();
  const double mag = std::sqrt(-2.0 * std::log(u1));
  return mean + stddev * mag * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t Rng::next_index(std::size_t n) {
  if (n == 0) throw InvalidInput("Rng::next_index: n must be > 0");
  // Rejection-free modulo is fine here: n is tiny relative to 2^64.
  return static_cast<std::size_t>(next_u64() % n);
}

std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream_id) {
  return finalize(master + (stream_id + 1) * kGolden);
}

}  // namespace qsom
