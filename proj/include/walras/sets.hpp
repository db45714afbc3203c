#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace walras {

// A bundle of items encoded as a bitmask: bit j set <=> item j in the bundle.
// Instances are capped at 16 items, so 32 bits leave plenty of headroom.
using ItemSet = std::uint32_t;

using Value = std::int64_t;
using PriceVector = std::vector<Value>;

constexpr int kMaxItems = 16;
constexpr int kMaxBidders = 16;

// Individual values are capped so that any sum appearing in utilities or the
// Lyapunov function (at most 16 bidders * 16 items * value) stays far from
// 64-bit overflow.
constexpr Value kMaxValue = Value{1} << 40;

constexpr ItemSet full_set(int m) { return (ItemSet{1} << m) - 1; }

constexpr int set_cardinality(ItemSet s) { return std::popcount(s); }

constexpr bool set_contains(ItemSet s, int item) { return (s >> item) & 1u; }

constexpr bool is_subset(ItemSet a, ItemSet b) { return (a & ~b) == 0; }

// Default item names are letters: 0 -> a, 1 -> b, ...
inline std::string item_name(int item, const std::vector<std::string>& labels = {}) {
  if (item >= 0 && static_cast<std::size_t>(item) < labels.size() && !labels[item].empty())
    return labels[item];
  return std::string(1, static_cast<char>('a' + item));
}

inline std::string format_set(ItemSet s, const std::vector<std::string>& labels = {}) {
  std::string out = "{";
  bool first = true;
  for (int j = 0; j < kMaxItems; ++j) {
    if (!set_contains(s, j)) continue;
    if (!first) out += ",";
    out += item_name(j, labels);
    first = false;
  }
  out += "}";
  return out;
}

inline std::vector<int> set_items(ItemSet s) {
  std::vector<int> items;
  while (s) {
    items.push_back(std::countr_zero(s));
    s &= s - 1;
  }
  return items;
}

inline ItemSet set_from_items(const std::vector<int>& items) {
  ItemSet s = 0;
  for (int j : items) s |= ItemSet{1} << j;
  return s;
}

// Sum of prices over the items of s.
inline Value price_of(const PriceVector& p, ItemSet s) {
  Value total = 0;
  while (s) {
    total += p[static_cast<std::size_t>(std::countr_zero(s))];
    s &= s - 1;
  }
  return total;
}

// p + 1_s and p - 1_s. The caller guarantees p >= 1_s for the decrement.
inline PriceVector price_raised(PriceVector p, ItemSet s) {
  for (int j : set_items(s)) ++p[static_cast<std::size_t>(j)];
  return p;
}

inline PriceVector price_lowered(PriceVector p, ItemSet s) {
  for (int j : set_items(s)) --p[static_cast<std::size_t>(j)];
  return p;
}

inline bool price_covers(const PriceVector& p, ItemSet s) {
  for (int j : set_items(s))
    if (p[static_cast<std::size_t>(j)] < 1) return false;
  return true;
}

inline std::string format_price(const PriceVector& p) {
  std::string out = "(";
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (j) out += ",";
    out += std::to_string(p[j]);
  }
  out += ")";
  return out;
}

namespace detail {

// Price mass of every subset of an m-item universe, filled by the standard
// lowest-bit recursion. Shared by the demand scan and the grid sweeps so
// there is exactly one way prices enter utilities.
inline void subset_price_sums(const PriceVector& p, int m, std::vector<Value>& out) {
  const std::size_t n = std::size_t{1} << m;
  out.resize(n);
  out[0] = 0;
  for (std::size_t s = 1; s < n; ++s) {
    const ItemSet low = static_cast<ItemSet>(s & (~s + 1));
    out[s] = out[s & (s - 1)] + p[static_cast<std::size_t>(std::countr_zero(low))];
  }
}

}  // namespace detail

}  // namespace walras
