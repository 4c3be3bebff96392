#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace turan {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based child seed: the same (root, keys...) always yields the same
/// stream regardless of evaluation order or thread.
inline std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = splitmix64(root);
  for (std::uint64_t k : keys) h = splitmix64(h ^ splitmix64(k + 0x632be59bd9b4e019ULL));
  return h;
}

/// Seeded generator with portable draws. The engine output is fixed by the
/// standard; the bounded and real-valued draws below are written out so that
/// results do not depend on the standard library's distribution classes.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return uniform01() < p;
  }

  template <typename T>
  void shuffle(std::span<T> xs) {
    for (std::size_t i = xs.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(xs[i - 1], xs[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// Indices in [0, total) each kept independently with probability p, in
/// increasing order. Small p jumps geometrically over skipped indices.
inline std::vector<std::uint64_t> bernoulli_indices(std::uint64_t total, double p, Rng& rng) {
  std::vector<std::uint64_t> out;
  if (p <= 0.0 || total == 0) return out;
  if (p >= 1.0) {
    out.resize(total);
    for (std::uint64_t i = 0; i < total; ++i) out[i] = i;
    return out;
  }
  if (p > 0.25) {
    for (std::uint64_t i = 0; i < total; ++i) {
      if (rng.bernoulli(p)) out.push_back(i);
    }
    return out;
  }
  const double log_q = std::log1p(-p);
  std::uint64_t i = 0;
  while (true) {
    const double u = 1.0 - rng.uniform01();  // (0, 1]
    const double skip = std::floor(std::log(u) / log_q);
    if (skip >= static_cast<double>(total - i)) break;
    i += static_cast<std::uint64_t>(skip);
    out.push_back(i);
    if (++i >= total) break;
  }
  return out;
}

}  // namespace turan
