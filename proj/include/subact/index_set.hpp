#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <string>
#include <vector>

#include "subact/errors.hpp"

namespace subact {

using Index = std::uint32_t;

/// Sorted, duplicate-free list of element or point indices.
using IndexSet = std::vector<Index>;

/// Bitmask over a ground set of at most 64 items.
using Mask = std::uint64_t;

inline IndexSet make_set(std::vector<Index> items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return items;
}

inline IndexSet make_set(std::initializer_list<Index> items) {
  return make_set(std::vector<Index>(items));
}

inline IndexSet range_set(Index n) {
  IndexSet out(n);
  for (Index i = 0; i < n; ++i) out[i] = i;
  return out;
}

inline bool contains(const IndexSet& s, Index x) {
  return std::binary_search(s.begin(), s.end(), x);
}

inline bool is_subset(const IndexSet& a, const IndexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool disjoint(const IndexSet& a, const IndexSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j) ++i; else ++j;
  }
  return true;
}

inline Mask to_mask(const IndexSet& s) {
  Mask m = 0;
  for (Index i : s) {
    if (i >= 64) throw StructuralError("index " + std::to_string(i) + " does not fit a 64-bit mask");
    m |= Mask{1} << i;
  }
  return m;
}

inline IndexSet from_mask(Mask m) {
  IndexSet out;
  out.reserve(static_cast<std::size_t>(std::popcount(m)));
  while (m != 0) {
    out.push_back(static_cast<Index>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

inline std::string format_set(const IndexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "}";
}

}  // namespace subact
