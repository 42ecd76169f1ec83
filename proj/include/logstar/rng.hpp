#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string_view>

namespace logstar {

// One-shot splitmix64 mixer (golden-ratio increment + finalizer).
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// xoshiro256++ with splitmix64 seed expansion. <random> engines are avoided
// on purpose: the standard pins mt19937_64 but not the distributions, and a
// recorded seed must replay the exact same stream, doubles included.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "xoshiro256++";

  explicit Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& word : state_) {
      s += 0x9E3779B97F4A7C15ull;
      std::uint64_t z = s;
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
      word = z ^ (z >> 31);
    }
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on the open interval (0,1): 52 mantissa bits plus a half-ulp
  // offset, so neither endpoint is reachable and -log stays finite.
  double uniform01() {
    return (static_cast<double>(next() >> 12) + 0.5) * 0x1.0p-52;
  }

  double exponential(double rate) { return -std::log(uniform01()) / rate; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

// Counter-based replica seeding: one master seed, one salt per ensemble pass,
// one counter per replica. The triple maps to a fixed generator seed, so
// ensembles are reproducible and replicas can run in any order.
inline std::uint64_t replica_seed(std::uint64_t master, std::uint64_t salt,
                                  std::uint64_t replica) {
  return mix64(mix64(master ^ mix64(salt)) +
               (replica + 1) * 0x9E3779B97F4A7C15ull);
}

}  // namespace logstar
