#pragma once

#include <cstdint>
#include <random>

#include "subact/index_set.hpp"

namespace subact {

/// Mixes a base seed with a cursor so that instance i of a run can be
/// regenerated without replaying instances 0..i-1.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seeded generator. Draws use plain modulo reduction so sequences are
/// identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t cursor) : engine_(splitmix64(seed ^ splitmix64(cursor))) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }

  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

  bool coin() { return (engine_() >> 63) != 0; }

  /// Random subset of {0..n-1} with exactly k elements.
  IndexSet subset_of_size(Index n, Index k) {
    std::vector<Index> pool(n);
    for (Index i = 0; i < n; ++i) pool[i] = i;
    for (Index i = 0; i < k && i < n; ++i) {
      auto j = static_cast<Index>(i + below(n - i));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(std::min(k, n));
    return make_set(std::move(pool));
  }

  /// Random nonempty subset of {0..n-1} with size uniform in [1, max_size].
  IndexSet nonempty_subset(Index n, Index max_size) {
    Index cap = std::min(n, max_size);
    return subset_of_size(n, static_cast<Index>(between(1, cap)));
  }

  /// Random nonempty subset drawn from an explicit pool.
  IndexSet nonempty_subset_of(const IndexSet& pool, Index max_size) {
    IndexSet picks = nonempty_subset(static_cast<Index>(pool.size()), max_size);
    IndexSet out;
    out.reserve(picks.size());
    for (Index i : picks) out.push_back(pool[i]);
    return make_set(std::move(out));
  }

  /// Random mask over n bits (possibly empty).
  Mask mask(unsigned n) {
    Mask m = engine_();
    return n >= 64 ? m : (m & ((Mask{1} << n) - 1));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace subact
