#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "walras/sets.hpp"

namespace walras {

enum class ValuationKind { Additive, UnitDemand, Table };

inline const char* kind_name(ValuationKind k) {
  switch (k) {
    case ValuationKind::Additive: return "additive";
    case ValuationKind::UnitDemand: return "unit_demand";
    case ValuationKind::Table: return "table";
  }
  return "?";
}

// A bidder's valuation, stored extensionally: values[S] for every bundle S.
// The kind tag is retained so that serialization round-trips and so that
// premise checks can exploit class guarantees (additive and unit-demand
// valuations substitute gross-ly by construction).
struct Valuation {
  int m = 0;
  ValuationKind kind = ValuationKind::Table;
  std::vector<Value> values;  // size 1<<m, indexed by bundle mask

  Value operator()(ItemSet s) const { return values[s]; }

  bool operator==(const Valuation&) const = default;
};

struct Instance {
  int m = 0;
  std::vector<Valuation> bidders;
  std::vector<std::string> item_labels;    // optional, empty when unnamed
  std::vector<std::string> bidder_labels;  // optional

  int n() const { return static_cast<int>(bidders.size()); }

  bool operator==(const Instance&) const = default;
};

namespace detail {

inline void check_item_count(int m) {
  if (m < 1 || m > kMaxItems)
    throw std::invalid_argument("item count must be in [1," + std::to_string(kMaxItems) +
                                "], got " + std::to_string(m));
}

inline void check_value_range(Value v) {
  if (v < 0) throw std::invalid_argument("values must be non-negative, got " + std::to_string(v));
  if (v > kMaxValue) throw std::invalid_argument("value " + std::to_string(v) + " exceeds cap");
}

}  // namespace detail

// v(S) = sum of per-item values over S.
inline Valuation make_additive(const std::vector<Value>& item_values) {
  const int m = static_cast<int>(item_values.size());
  detail::check_item_count(m);
  for (Value v : item_values) detail::check_value_range(v);
  Valuation val{m, ValuationKind::Additive, std::vector<Value>(std::size_t{1} << m, 0)};
  for (ItemSet s = 1; s < (ItemSet{1} << m); ++s) {
    const ItemSet low = s & (~s + 1);
    val.values[s] = val.values[s & (s - 1)] + item_values[static_cast<std::size_t>(std::countr_zero(low))];
  }
  return val;
}

// v(S) = max of per-item values over S, 0 on the empty bundle.
inline Valuation make_unit_demand(const std::vector<Value>& item_values) {
  const int m = static_cast<int>(item_values.size());
  detail::check_item_count(m);
  for (Value v : item_values) detail::check_value_range(v);
  Valuation val{m, ValuationKind::UnitDemand, std::vector<Value>(std::size_t{1} << m, 0)};
  for (ItemSet s = 1; s < (ItemSet{1} << m); ++s) {
    const ItemSet low = s & (~s + 1);
    const Value rest = val.values[s & (s - 1)];
    const Value one = item_values[static_cast<std::size_t>(std::countr_zero(low))];
    val.values[s] = rest > one ? rest : one;
  }
  return val;
}

// First monotonicity violation in (S, S+item) scan order, if any. Checking
// single-item extensions suffices: v is monotone iff v(S) <= v(S+j) for all
// S and j not in S.
inline std::optional<std::pair<ItemSet, ItemSet>> monotonicity_violation(const Valuation& v) {
  for (ItemSet s = 0; s < (ItemSet{1} << v.m); ++s)
    for (int j = 0; j < v.m; ++j) {
      if (set_contains(s, j)) continue;
      const ItemSet t = s | (ItemSet{1} << j);
      if (v.values[s] > v.values[t]) return std::make_pair(s, t);
    }
  return std::nullopt;
}

// Explicit table, indexed by bundle mask. Rejects non-normalized or
// non-monotone tables; use parse_instance + validate to inspect bad data
// without throwing.
inline Valuation make_table(const std::vector<Value>& values) {
  const auto size = values.size();
  if (size == 0 || (size & (size - 1)) != 0)
    throw std::invalid_argument("table size must be a power of two, got " + std::to_string(size));
  const int m = std::countr_zero(size);
  detail::check_item_count(m);
  for (Value v : values) detail::check_value_range(v);
  if (values[0] != 0)
    throw std::invalid_argument("table must be normalized: v({}) = 0, got " + std::to_string(values[0]));
  Valuation val{m, ValuationKind::Table, values};
  if (auto w = monotonicity_violation(val))
    throw std::invalid_argument("table not monotone: v(" + format_set(w->first) + ") > v(" +
                                format_set(w->second) + ")");
  return val;
}

inline Instance make_instance(int m, std::vector<Valuation> bidders) {
  detail::check_item_count(m);
  if (bidders.empty() || bidders.size() > kMaxBidders)
    throw std::invalid_argument("bidder count must be in [1," + std::to_string(kMaxBidders) + "]");
  for (const auto& b : bidders)
    if (b.m != m) throw std::invalid_argument("bidder item count disagrees with instance");
  return Instance{m, std::move(bidders), {}, {}};
}

struct ValuationIssue {
  int bidder = 0;
  std::string what;          // "normalization" or "monotonicity"
  ItemSet smaller = 0;       // witness pair for monotonicity
  ItemSet larger = 0;
};

struct ValidationReport {
  bool well_formed = true;
  std::vector<ValuationIssue> issues;
  Value vmax = 0;  // max over bidders of v(full set)
  Value bound = 0; // vmax + 1: items priced above vmax are never demanded
};

inline ValidationReport validate(const Instance& inst) {
  ValidationReport rep;
  const ItemSet omega = full_set(inst.m);
  for (int i = 0; i < inst.n(); ++i) {
    const Valuation& v = inst.bidders[static_cast<std::size_t>(i)];
    if (v.values[0] != 0) {
      rep.issues.push_back({i, "normalization", 0, 0});
      rep.well_formed = false;
    }
    if (auto w = monotonicity_violation(v)) {
      rep.issues.push_back({i, "monotonicity", w->first, w->second});
      rep.well_formed = false;
    }
    if (v.values[omega] > rep.vmax) rep.vmax = v.values[omega];
  }
  rep.bound = rep.vmax + 1;
  return rep;
}

// Largest price any Walrasian vector can put on an item: beyond vmax no
// bundle containing the item is ever demanded.
inline Value grid_vmax(const Instance& inst) {
  Value vmax = 0;
  const ItemSet omega = full_set(inst.m);
  for (const auto& b : inst.bidders) vmax = std::max(vmax, b.values[omega]);
  return vmax;
}

}  // namespace walras
