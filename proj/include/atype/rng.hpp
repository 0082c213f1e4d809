#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace atype {

/// SplitMix64. Used to expand seeds and to fold stream identifiers.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

/// Folds a master seed and a path of counters into one stream seed.
/// Every (master, path) pair maps to its own statistically independent
/// generator, so work items can be seeded by coordinate instead of by
/// execution order.
uint64_t derive_seed(uint64_t master, std::initializer_list<uint64_t> path);

/// FNV-1a, for turning names (task, cell) into seed path components.
uint64_t hash_name(std::string_view name);

/// xoshiro256** with explicit seeding. The standard distributions are
/// implementation-defined, so all bounded draws are done here to keep
/// results bit-identical across toolchains.
class Rng {
 public:
  explicit Rng(uint64_t seed) { reseed(seed); }

  static Rng stream(uint64_t master, std::initializer_list<uint64_t> path) {
    return Rng(derive_seed(master, path));
  }

  void reseed(uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& w : s_) w = sm.next();
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform in [0, bound), bound > 0. Multiply-shift; the bias is
  /// below bound/2^64 and irrelevant at the bounds used here.
  uint64_t below(uint64_t bound) {
    return static_cast<uint64_t>(
        (static_cast<__uint128_t>(next_u64()) * bound) >> 64);
  }

  int below_int(int bound) { return static_cast<int>(below(static_cast<uint64_t>(bound))); }

  bool coin() { return (next_u64() >> 63) != 0; }

  uint8_t bit() { return static_cast<uint8_t>(next_u64() >> 63); }

  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  uint64_t s_[4];
};

}  // namespace atype
