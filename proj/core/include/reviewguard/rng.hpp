#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace reviewguard {

// Deterministic counter-style generator (splitmix64). Every consumer derives
// its own stream from (seed, stream ids), so generation order and threading
// cannot change the values drawn for a given entity. Not for cryptography.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Derives an independent stream from a root seed and a path of ids.
  static Rng stream(std::uint64_t seed, std::initializer_list<std::uint64_t> ids) {
    std::uint64_t s = seed;
    for (std::uint64_t id : ids) {
      s = mix(s ^ (id + 0x9e3779b97f4a7c15ULL));
    }
    return Rng(s);
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  // Uniform in [lo, hi], inclusive. Modulo bias is negligible for the small
  // ranges used here and keeps the draw byte-reproducible everywhere.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    std::uint64_t span = std::uint64_t(hi - lo) + 1;
    return lo + std::int64_t(next_u64() % span);
  }

  // Uniform in [0, 1) with 53 bits of precision.
  double unit_real() { return double(next_u64() >> 11) * 0x1.0p-53; }

  double uniform_real(double lo, double hi) { return lo + (hi - lo) * unit_real(); }

  bool bernoulli(double p) { return unit_real() < p; }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[std::size_t(uniform_int(0, std::int64_t(v.size()) - 1))];
  }

  // Draws k distinct indices from [0, n).
  std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k);

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace reviewguard
