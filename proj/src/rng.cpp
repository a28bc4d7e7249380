#include "combopt/rng.hpp"

namespace combopt {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : gen_(splitmix64(splitmix64(seed) ^ (stream * 0xD1B54A32D192ED03ULL))) {}

double RngStream::uniform() {
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

int RngStream::categorical(std::span<const double> probs) {
  const double u = uniform();
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size()) - 1;
}

}  // namespace combopt
