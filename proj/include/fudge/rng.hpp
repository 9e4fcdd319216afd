#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace fudge {

// SplitMix64 finalizer, used only to derive child seeds.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Deterministic substream derivation: every consumer of randomness pulls a
// child seed from (root seed, label, index), so regenerating one stream
// never disturbs the others.
inline uint64_t derive_seed(uint64_t seed, std::string_view label, uint64_t index = 0) {
  return mix64(seed ^ mix64(fnv1a64(label) + index));
}

// Seedable, reproducible generator. The engine is std::mt19937_64, whose
// output sequence is pinned by the standard; uniform and normal variates
// are produced by explicit constructions below rather than the unspecified
// std distributions, so a (seed, call sequence) pair always yields the
// same draws.
class Rng {
 public:
  explicit Rng(uint64_t seed) : seed_(seed), gen_(seed) {}

  uint64_t seed() const { return seed_; }

  Rng substream(std::string_view label, uint64_t index = 0) const {
    return Rng(derive_seed(seed_, label, index));
  }

  uint64_t next_u64() { return gen_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal via Box-Muller; the second variate of each pair is
  // cached and returned by the following call.
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 2.0 * 3.14159265358979323846 * u2;
    cached_ = r * std::sin(th);
    have_cached_ = true;
    return r * std::cos(th);
  }

  double normal(double mean, double sd) { return mean + sd * normal(); }

  // Uniform integer in [lo, hi], inclusive, by rejection (unbiased).
  int64_t uniform_int(int64_t lo, int64_t hi) {
    const uint64_t range = static_cast<uint64_t>(hi - lo) + 1;
    if (range == 0) return static_cast<int64_t>(gen_());  // full 64-bit span
    const uint64_t bound = UINT64_MAX - UINT64_MAX % range;
    uint64_t x = gen_();
    while (x >= bound) x = gen_();
    return lo + static_cast<int64_t>(x % range);
  }

  bool bernoulli(double prob) { return uniform01() < prob; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      const size_t j = static_cast<size_t>(uniform_int(0, static_cast<int64_t>(i) - 1));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  uint64_t seed_;
  std::mt19937_64 gen_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace fudge
