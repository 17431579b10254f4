#pragma once

#include <cstdint>
#include <random>

namespace paim {

// Mixes a base seed with up to two stream labels (SplitMix64 finalizer), so
// per-chain and per-replication streams never overlap in practice and do not
// depend on how many other streams exist.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t label, std::uint64_t sublabel = 0);

// Stream labels used across the library.
namespace stream {
inline constexpr std::uint64_t chain = 0x63686169;      // one sub-stream per chain index
inline constexpr std::uint64_t init = 0x696e6974;       // initial conditions
inline constexpr std::uint64_t sampling = 0x73616d70;   // per-replication sampling seed
inline constexpr std::uint64_t scheduler = 0x73636864;  // reserved for scheduler-level draws
}  // namespace stream

// A random stream owned by exactly one consumer. Not thread-safe; give every
// chain its own.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  // Uniform on [0, 1).
  double uniform() { return uniform_(engine_); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace paim
