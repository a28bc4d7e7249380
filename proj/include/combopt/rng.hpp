#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace combopt {

// Seeded deterministic generator. Every random decision in the library is
// drawn from an explicitly constructed (seed, stream) pair so that runs are
// reproducible bit for bit. Doubles are derived from raw engine output
// in-house; std::uniform_real_distribution is implementation-defined and
// would break byte-identical traces across standard libraries.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi);
  bool bernoulli(double p) { return uniform() < p; }

  // Inverse-CDF draw over probs in index order. Assumes probs sums to ~1;
  // any runoff mass lands on the last index.
  int categorical(std::span<const double> probs);

  std::uint64_t next_u64() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

// Stream ids used by the game harness: the player and the environment draw
// from independent streams of the same master seed.
inline constexpr std::uint64_t kPlayerStream = 1;
inline constexpr std::uint64_t kEnvironmentStream = 2;

}  // namespace combopt
