#pragma once

#include <cmath>
#include <cstdint>

namespace tcc {

// 64-bit finalizer used by the counter-based generator below.
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

// Derives an independent stream seed from (seed, stream). Depends on nothing
// else, so substreams can be created and consumed in any order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix64(seed ^ mix64((stream + 1) * 0xD1B54A32D192ED03ull));
}

// Counter-based generator: output i is a hash of (key, i). Identical seeds
// give identical streams regardless of what other generators ran in between.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : key_(mix64(seed ^ 0x6A09E667F3BCC909ull)) {}

  std::uint64_t next_u64() {
    return mix64(key_ + (++counter_) * 0x9E3779B97F4A7C15ull);
  }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1]; safe as a log argument.
  double next_open_double() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; consumes exactly two outputs.
  double next_normal() {
    const double u1 = next_open_double();
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.28318530717958647692 * u2);
  }

  bool next_bernoulli(double p) { return next_double() < p; }

  // Uniform in [0, n); unbiased by rejection.
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t min = (0 - n) % n;
    std::uint64_t x = next_u64();
    while (x < min) x = next_u64();
    return x % n;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace tcc
