#pragma once

// Naive reference implementations used to cross-check the library. Written
// straight from the definitions, favoring obviousness over speed, and kept
// structurally different from the library code paths on purpose.

#include <vector>

#include "walras/walras.hpp"

namespace oracle {

using walras::Instance;
using walras::ItemSet;
using walras::PriceVector;
using walras::Valuation;
using walras::Value;

inline Value utility(const Valuation& v, const PriceVector& p, ItemSet s) {
  Value mass = 0;
  for (int j = 0; j < v.m; ++j)
    if (s & (ItemSet{1} << j)) mass += p[static_cast<std::size_t>(j)];
  return v.values[s] - mass;
}

inline std::vector<ItemSet> demand(const Valuation& v, const PriceVector& p) {
  Value best = oracle::utility(v, p, 0);
  for (ItemSet s = 0; s < (ItemSet{1} << v.m); ++s)
    best = std::max(best, oracle::utility(v, p, s));
  std::vector<ItemSet> out;
  for (ItemSet s = 0; s < (ItemSet{1} << v.m); ++s)
    if (oracle::utility(v, p, s) == best) out.push_back(s);
  return out;
}

inline int overlap_min(const Valuation& v, const PriceVector& p, ItemSet s) {
  int best = v.m + 1;
  for (ItemSet d : demand(v, p)) best = std::min(best, walras::set_cardinality(d & s));
  return best;
}

inline int overlap_max(const Valuation& v, const PriceVector& p, ItemSet s) {
  int best = -1;
  for (ItemSet d : demand(v, p)) best = std::max(best, walras::set_cardinality(d & s));
  return best;
}

inline int lsum(const Instance& inst, const PriceVector& p, ItemSet s) {
  int total = 0;
  for (const auto& b : inst.bidders) total += overlap_min(b, p, s);
  return total;
}

inline int hsum(const Instance& inst, const PriceVector& p, ItemSet s) {
  int total = 0;
  for (const auto& b : inst.bidders) total += overlap_max(b, p, s);
  return total;
}

inline Value lyapunov(const Instance& inst, const PriceVector& p) {
  Value total = 0;
  for (const auto& b : inst.bidders) {
    Value best = 0;
    for (ItemSet s = 0; s < (ItemSet{1} << inst.m); ++s)
      best = std::max(best, oracle::utility(b, p, s));
    total += best;
  }
  for (Value c : p) total += c;
  return total;
}

// Recursive assignment search: is there a partition of all items into
// per-bidder demanded bundles?
inline bool walrasian_rec(const Instance& inst, const PriceVector& p,
                          std::vector<std::vector<ItemSet>>& demands, std::size_t bidder,
                          ItemSet remaining) {
  if (bidder + 1 == demands.size()) {
    for (ItemSet d : demands[bidder])
      if (d == remaining) return true;
    return false;
  }
  for (ItemSet d : demands[bidder])
    if (walras::is_subset(d, remaining) &&
        walrasian_rec(inst, p, demands, bidder + 1, remaining & ~d))
      return true;
  return false;
}

inline bool walrasian(const Instance& inst, const PriceVector& p) {
  std::vector<std::vector<ItemSet>> demands;
  for (const auto& b : inst.bidders) demands.push_back(demand(b, p));
  return walrasian_rec(inst, p, demands, 0, walras::full_set(inst.m));
}

inline Value welfare(const Instance& inst) {
  const int n = inst.n();
  Value best = 0;
  std::vector<int> owner(static_cast<std::size_t>(inst.m), 0);
  while (true) {
    std::vector<ItemSet> bundles(static_cast<std::size_t>(n), 0);
    for (int j = 0; j < inst.m; ++j)
      bundles[static_cast<std::size_t>(owner[static_cast<std::size_t>(j)])] |= ItemSet{1} << j;
    Value w = 0;
    for (int i = 0; i < n; ++i)
      w += inst.bidders[static_cast<std::size_t>(i)].values[bundles[static_cast<std::size_t>(i)]];
    best = std::max(best, w);
    int j = 0;
    while (j < inst.m && ++owner[static_cast<std::size_t>(j)] == n) {
      owner[static_cast<std::size_t>(j)] = 0;
      ++j;
    }
    if (j == inst.m) break;
  }
  return best;
}

inline std::vector<PriceVector> walrasian_set(const Instance& inst) {
  const Value vmax = walras::grid_vmax(inst);
  std::vector<PriceVector> out;
  PriceVector p(static_cast<std::size_t>(inst.m), 0);
  while (true) {
    if (walrasian(inst, p)) out.push_back(p);
    int j = inst.m - 1;
    while (j >= 0 && ++p[static_cast<std::size_t>(j)] > vmax) {
      p[static_cast<std::size_t>(j)] = 0;
      --j;
    }
    if (j < 0) break;
  }
  return out;
}

}  // namespace oracle
