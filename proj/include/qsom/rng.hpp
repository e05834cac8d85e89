#pragma once

#include <cstdint>
#include <cstddef>

namespace qsom {

/// Deterministic random stream (splitmix64 core, Box-Muller gaussians).
///
/// The standard <random> distributions are implementation-defined, which
/// would break the byte-identical-output contract across toolchains, so the
/// few draws we need are implemented here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  /// Uniform on [0, 1), 53-bit resolution.
  double next_double();

  /// Uniform on [lo, hi).
  double next_uniform(double lo, double hi);

  /// N(mean, stddev^2). Two uniform draws per call, no spare caching.
  double next_gaussian(double mean, double stddev);

  /// Uniform index in [0, n). n must be > 0.
  std::size_t next_index(std::size_t n);

 private:
  std::uint64_t state_;
};

/// Derives an independent substream seed from a master seed.
///
/// stream_seed(m, id) = splitmix64-finalize(m + (id + 1) * phi). Streams are
/// a pure function of (master, id), so adding agents to a run never perturbs
/// the streams of existing ones.
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream_id);

/// Stream id for a (role, agent) pair. Roles keep the mind stream separate
/// from e.g. the random-policy stream of the same agent.
constexpr std::uint64_t agent_stream(std::uint32_t role, std::uint32_t agent_index) {
  return (static_cast<std::uint64_t>(role) << 32) | agent_index;
}

}  // namespace qsom
