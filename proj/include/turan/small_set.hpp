#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace turan {

using Vertex = std::uint32_t;
using EdgeIndex = std::uint32_t;

// Largest edge size supported by the fixed-width subset keys.
inline constexpr std::size_t kMaxUniformity = 8;

/// A sorted vertex set of at most kMaxUniformity elements, stored inline.
/// Used as the key type for shadows and codegree tables; ordering is
/// lexicographic among sets of equal size.
struct SmallSet {
  std::uint8_t size = 0;
  std::array<Vertex, kMaxUniformity> items{};

  SmallSet() = default;

  static SmallSet from_sorted(std::span<const Vertex> vs) {
    if (vs.size() > kMaxUniformity) {
      throw std::invalid_argument("vertex set larger than " + std::to_string(kMaxUniformity));
    }
    SmallSet s;
    s.size = static_cast<std::uint8_t>(vs.size());
    std::copy(vs.begin(), vs.end(), s.items.begin());
    return s;
  }

  static SmallSet from_unsorted(std::span<const Vertex> vs) {
    SmallSet s = from_sorted(vs);
    std::sort(s.items.begin(), s.items.begin() + s.size);
    return s;
  }

  std::span<const Vertex> view() const { return {items.data(), size}; }
  std::vector<Vertex> to_vector() const { return {items.begin(), items.begin() + size}; }

  const Vertex* begin() const { return items.data(); }
  const Vertex* end() const { return items.data() + size; }

  bool contains(Vertex v) const { return std::binary_search(begin(), end(), v); }

  auto operator<=>(const SmallSet&) const = default;
  bool operator==(const SmallSet&) const = default;
};

struct SmallSetHash {
  std::size_t operator()(const SmallSet& s) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ s.size;
    for (std::size_t i = 0; i < s.size; ++i) {
      h ^= s.items[i] + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
  }
};

/// Calls f(std::span<const std::size_t>) for every k-combination of
/// {0, ..., n-1} in lexicographic order.
template <typename F>
void for_each_combination(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(std::span<const std::size_t>(idx));
    if (k == 0) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Calls f(const SmallSet&) for every k-subset of a sorted vertex span.
template <typename F>
void for_each_subset(std::span<const Vertex> sorted, std::size_t k, F&& f) {
  SmallSet s;
  s.size = static_cast<std::uint8_t>(k);
  for_each_combination(sorted.size(), k, [&](std::span<const std::size_t> idx) {
    for (std::size_t i = 0; i < k; ++i) s.items[i] = sorted[idx[i]];
    f(static_cast<const SmallSet&>(s));
  });
}

}  // namespace turan
