#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "walras/instance.hpp"

namespace walras {

inline void check_price(const Instance& inst, const PriceVector& p) {
  if (static_cast<int>(p.size()) != inst.m)
    throw std::invalid_argument("price vector length must equal m");
  for (Value x : p)
    if (x < 0) throw std::invalid_argument("prices must be non-negative");
}

inline Value utility(const Valuation& v, const PriceVector& p, ItemSet s) {
  return v.values[s] - price_of(p, s);
}

struct DemandResult {
  Value max_utility = 0;
  std::vector<ItemSet> sets;  // all argmax bundles, ascending bitmask order
};

namespace detail {

// The one and only demand computation: scan every bundle. No per-kind
// shortcut exists on purpose; everything downstream inherits its honesty
// from this loop.
inline Value demand_scan(const Valuation& v, const PriceVector& p, std::vector<ItemSet>& out) {
  std::vector<Value> mass;
  subset_price_sums(p, v.m, mass);
  const std::size_t count = std::size_t{1} << v.m;
  Value best = 0;  // empty bundle: utility 0
  for (std::size_t s = 0; s < count; ++s) {
    const Value u = v.values[s] - mass[s];
    if (u > best) best = u;
  }
  out.clear();
  for (std::size_t s = 0; s < count; ++s)
    if (v.values[s] - mass[s] == best) out.push_back(static_cast<ItemSet>(s));
  return best;
}

}  // namespace detail

inline DemandResult demand_sets(const Valuation& v, const PriceVector& p) {
  DemandResult r;
  r.max_utility = detail::demand_scan(v, p, r.sets);
  return r;
}

inline Value max_utility(const Valuation& v, const PriceVector& p) {
  std::vector<Value> mass;
  detail::subset_price_sums(p, v.m, mass);
  Value best = 0;
  for (std::size_t s = 0; s < (std::size_t{1} << v.m); ++s) {
    const Value u = v.values[s] - mass[s];
    if (u > best) best = u;
  }
  return best;
}

// l_p(S): the bidder cannot avoid taking this many items of S.
inline int requirement(const Valuation& v, const PriceVector& p, ItemSet s) {
  const auto d = demand_sets(v, p);
  int best = v.m + 1;
  for (ItemSet dset : d.sets) best = std::min(best, set_cardinality(dset & s));
  return best;
}

// h_p(S): the bidder can be talked into taking this many items of S.
inline int redundant(const Valuation& v, const PriceVector& p, ItemSet s) {
  const auto d = demand_sets(v, p);
  int best = 0;
  for (ItemSet dset : d.sets) best = std::max(best, set_cardinality(dset & s));
  return best;
}

inline int auction_requirement(const Instance& inst, const PriceVector& p, ItemSet s) {
  int total = 0;
  for (const auto& b : inst.bidders) total += requirement(b, p, s);
  return total;
}

inline int auction_redundant(const Instance& inst, const PriceVector& p, ItemSet s) {
  int total = 0;
  for (const auto& b : inst.bidders) total += redundant(b, p, s);
  return total;
}

// Per-price tables of l^p and h^p for every bundle, so classification and
// the auction loops pay the demand scan once per bidder instead of once per
// (bidder, bundle) query.
struct ClassTables {
  int m = 0;
  std::vector<int> l_sum, h_sum;  // indexed by bundle mask
};

inline ClassTables class_tables(const Instance& inst, const PriceVector& p) {
  check_price(inst, p);
  ClassTables t;
  t.m = inst.m;
  const std::size_t count = std::size_t{1} << inst.m;
  t.l_sum.assign(count, 0);
  t.h_sum.assign(count, 0);
  std::vector<ItemSet> dsets;
  for (const auto& b : inst.bidders) {
    detail::demand_scan(b, p, dsets);
    for (std::size_t s = 1; s < count; ++s) {
      int lo = inst.m + 1, hi = 0;
      for (ItemSet d : dsets) {
        const int c = set_cardinality(static_cast<ItemSet>(s) & d);
        lo = std::min(lo, c);
        hi = std::max(hi, c);
      }
      t.l_sum[s] += lo;
      t.h_sum[s] += hi;
    }
  }
  return t;
}

enum class SetClass { OverDemanded, WeaklyOverDemanded, UnderDemanded, WeaklyUnderDemanded };

inline const char* class_name(SetClass c) {
  switch (c) {
    case SetClass::OverDemanded: return "over-demanded";
    case SetClass::WeaklyOverDemanded: return "weakly-over-demanded";
    case SetClass::UnderDemanded: return "under-demanded";
    case SetClass::WeaklyUnderDemanded: return "weakly-under-demanded";
  }
  return "?";
}

struct SetClassification {
  ItemSet set = 0;
  int cardinality = 0;
  int l = 0;  // l^p(S), summed over bidders
  int h = 0;  // h^p(S)
  bool over = false, weakly_over = false, under = false, weakly_under = false;
};

inline SetClassification classify_from(const ClassTables& t, ItemSet s) {
  SetClassification c;
  c.set = s;
  c.cardinality = set_cardinality(s);
  c.l = t.l_sum[s];
  c.h = t.h_sum[s];
  c.over = c.l > c.cardinality;
  c.weakly_over = c.l >= c.cardinality;
  c.under = c.h < c.cardinality;
  c.weakly_under = c.h <= c.cardinality;
  return c;
}

inline SetClassification classify_set(const Instance& inst, const PriceVector& p, ItemSet s) {
  check_price(inst, p);
  SetClassification c;
  c.set = s;
  c.cardinality = set_cardinality(s);
  for (const auto& b : inst.bidders) {
    c.l += requirement(b, p, s);
    c.h += redundant(b, p, s);
  }
  c.over = c.l > c.cardinality;
  c.weakly_over = c.l >= c.cardinality;
  c.under = c.h < c.cardinality;
  c.weakly_under = c.h <= c.cardinality;
  return c;
}

// All bundles of the requested class in ascending bitmask order. The empty
// bundle is always weakly over- and weakly under-demanded (l = h = 0 = |S|).
inline std::vector<ItemSet> enumerate_class(const Instance& inst, const PriceVector& p, SetClass cls) {
  const ClassTables t = class_tables(inst, p);
  std::vector<ItemSet> out;
  for (ItemSet s = 0; s < (ItemSet{1} << inst.m); ++s) {
    const auto c = classify_from(t, s);
    const bool hit = (cls == SetClass::OverDemanded && c.over) ||
                     (cls == SetClass::WeaklyOverDemanded && c.weakly_over) ||
                     (cls == SetClass::UnderDemanded && c.under) ||
                     (cls == SetClass::WeaklyUnderDemanded && c.weakly_under);
    if (hit) out.push_back(s);
  }
  return out;
}

// ---- substitutability ------------------------------------------------------

struct GsWitness {
  PriceVector price;
  ItemSet set = 0;
  Value lhs = 0;  // u(p)
  Value rhs = 0;  // u(p + 1_S) + l_p(S)
};

constexpr int kDefaultGsCheckCap = 5;

namespace detail {

// Lexicographic walk over {0..bound}^m. Returns false once the odometer wraps.
inline bool next_price(PriceVector& p, Value bound) {
  for (std::size_t j = p.size(); j-- > 0;) {
    if (p[j] < bound) {
      ++p[j];
      std::fill(p.begin() + static_cast<std::ptrdiff_t>(j) + 1, p.end(), 0);
      return true;
    }
  }
  return false;
}

}  // namespace detail

// Decides substitutability by checking u(p) = u(p+1_S) + l_p(S) for every
// price in {0..B}^m and every non-empty bundle, B = v(full) + 1. The finite
// grid decides the unbounded quantifier: an item priced above v(full)
// exceeds any marginal value, belongs to no demanded bundle, and further
// increases change neither demand nor the checked quantities, so every
// configuration reachable at unbounded prices is already realized with
// coordinates clamped to B. Returns the lexicographically first violation.
inline std::optional<GsWitness> is_gross_substitute(const Valuation& v,
                                                    int m_check_cap = kDefaultGsCheckCap) {
  if (v.values[0] != 0) throw std::invalid_argument("valuation must be normalized");
  if (auto w = monotonicity_violation(v))
    throw std::invalid_argument("valuation not monotone: v(" + format_set(w->first) + ") > v(" +
                                format_set(w->second) + ")");
  if (v.m > m_check_cap)
    throw std::invalid_argument("grid check capped at m <= " + std::to_string(m_check_cap));

  const Value bound = v.values[full_set(v.m)] + 1;
  PriceVector p(static_cast<std::size_t>(v.m), 0);
  std::vector<ItemSet> dsets;
  do {
    const Value up = detail::demand_scan(v, p, dsets);
    for (ItemSet s = 1; s < (ItemSet{1} << v.m); ++s) {
      int l = v.m + 1;
      for (ItemSet d : dsets) l = std::min(l, set_cardinality(d & s));
      const Value rhs = max_utility(v, price_raised(p, s)) + l;
      if (up != rhs) return GsWitness{p, s, up, rhs};
    }
  } while (detail::next_price(p, bound));
  return std::nullopt;
}

// The descending-side identity u(p) = u(p-1_S) - h_p(S); returns both sides
// for reporting. Requires p >= 1_S.
inline std::pair<Value, Value> dual_gs_check(const Valuation& v, const PriceVector& p, ItemSet s) {
  if (!price_covers(p, s))
    throw std::invalid_argument("dual check needs every item of S priced at least 1");
  const Value lhs = max_utility(v, p);
  const Value rhs = max_utility(v, price_lowered(p, s)) - redundant(v, p, s);
  return {lhs, rhs};
}

// Smallest-bitmask bundle strictly better than S that differs from S by at
// most one item in each direction. Substitutable valuations admit one for
// every non-demanded bundle.
inline std::optional<ItemSet> single_improvement(const Valuation& v, const PriceVector& p, ItemSet s) {
  const auto d = demand_sets(v, p);
  if (std::find(d.sets.begin(), d.sets.end(), s) != d.sets.end())
    throw std::invalid_argument("bundle is demanded; nothing to improve");
  const Value us = utility(v, p, s);
  std::optional<ItemSet> best;
  for (ItemSet t = 0; t < (ItemSet{1} << v.m); ++t) {
    if (set_cardinality(t & ~s) > 1 || set_cardinality(s & ~t) > 1) continue;
    if (utility(v, p, t) > us) {
      best = t;
      break;  // ascending scan: first hit is the smallest mask
    }
  }
  return best;
}

// A price at which the demand collection pins down a substitutability
// failure: D(q) = {A, A+j1+j2} or {A+j3, A+j1+j2}. Over integer prices the
// exact two-bundle collection may be unreachable even for non-substitutable
// valuations (the separating price can be fractional), so collections that
// merely contain such a pair are reported as near misses.
struct NonGsConfiguration {
  PriceVector price;
  ItemSet base = 0;      // A
  int j1 = -1, j2 = -1;  // the paired items
  int j3 = -1;           // -1 for the first form
  bool exact = true;     // false: D(q) has members beyond the pair
};

struct NonGsSearch {
  std::optional<NonGsConfiguration> found;        // exact form, lexicographically first
  std::vector<NonGsConfiguration> near_misses;    // capped
  std::size_t near_miss_count = 0;
};

inline NonGsSearch non_gs_configuration(const Valuation& v, int m_check_cap = kDefaultGsCheckCap) {
  if (auto w = monotonicity_violation(v))
    throw std::invalid_argument("valuation not monotone: v(" + format_set(w->first) + ") > v(" +
                                format_set(w->second) + ")");
  if (v.m < 2) throw std::invalid_argument("configuration search needs at least 2 items");
  if (v.m > m_check_cap)
    throw std::invalid_argument("grid search capped at m <= " + std::to_string(m_check_cap));

  constexpr std::size_t kNearMissKeep = 8;
  NonGsSearch out;
  const Value bound = v.values[full_set(v.m)] + 1;
  PriceVector q(static_cast<std::size_t>(v.m), 0);
  std::vector<ItemSet> dsets;
  do {
    detail::demand_scan(v, q, dsets);
    // Shape test for an (unordered) pair of demanded bundles. With two
    // items only the first form applies: two-item substitutability is
    // plain submodularity, which fails in that shape alone.
    auto match = [&](ItemSet x, ItemSet y) -> std::optional<NonGsConfiguration> {
      if (set_cardinality(y) < set_cardinality(x)) std::swap(x, y);
      const ItemSet base = x & y;
      const ItemSet up = y & ~base;
      const ItemSet down = x & ~base;
      if (set_cardinality(up) != 2) return std::nullopt;
      const int j1 = std::countr_zero(up);
      const int j2 = std::countr_zero(up & (up - 1));
      if (down == 0)
        return NonGsConfiguration{q, base, j1, j2, -1, true};
      if (set_cardinality(down) == 1 && v.m >= 3)
        return NonGsConfiguration{q, base, j1, j2, std::countr_zero(down), true};
      return std::nullopt;
    };
    if (dsets.size() == 2 && !out.found) {
      if (auto cfg = match(dsets[0], dsets[1])) out.found = *cfg;
    } else if (dsets.size() > 2) {
      bool recorded = false;
      for (std::size_t a = 0; a < dsets.size() && !recorded; ++a)
        for (std::size_t b = a + 1; b < dsets.size() && !recorded; ++b)
          if (auto cfg = match(dsets[a], dsets[b])) {
            cfg->exact = false;
            ++out.near_miss_count;
            if (out.near_misses.size() < kNearMissKeep) out.near_misses.push_back(*cfg);
            recorded = true;  // one record per price point
          }
    }
    if (out.found) return out;
  } while (detail::next_price(q, bound));
  return out;
}

}  // namespace walras
