#pragma once

#include <vector>

#include "walras/auction.hpp"

namespace walras {
namespace unitdemand {

// The classical single-item apparatus. Demand here is item-level: the
// utility-maximizing items with non-negative utility, plus an outside
// option once nothing beats staying empty. The bundle-level machinery on
// the same instance is the general framework; compare_with_general lines
// the two up without asserting they coincide.

inline void check_unit_demand(const Instance& inst) {
  for (int i = 0; i < inst.n(); ++i)
    if (inst.bidders[static_cast<std::size_t>(i)].kind != ValuationKind::UnitDemand)
      throw std::invalid_argument("bidder " + std::to_string(i) + " is not unit-demand kind");
}

struct ItemDemand {
  ItemSet demanded_items = 0;  // argmax items, empty when everything is negative
  Value best_utility = 0;      // 0 when the outside option wins
  bool outside_option = false; // staying empty is (weakly) best
};

inline ItemDemand item_demand(const Valuation& v, const PriceVector& p) {
  ItemDemand d;
  Value best = 0;
  bool any = false;
  for (int j = 0; j < v.m; ++j) {
    const Value u = v.values[ItemSet{1} << j] - p[static_cast<std::size_t>(j)];
    if (u < 0) continue;
    if (!any || u > best) {
      best = u;
      d.demanded_items = 0;
      any = true;
    }
    if (u == best) d.demanded_items |= ItemSet{1} << j;
  }
  d.best_utility = any ? best : 0;
  d.outside_option = !any || best == 0;
  return d;
}

// Lambda_p(S): bidders whose whole (non-empty) item demand sits inside S.
inline std::vector<int> lambda_set(const Instance& inst, const PriceVector& p, ItemSet s) {
  check_unit_demand(inst);
  check_price(inst, p);
  std::vector<int> out;
  for (int i = 0; i < inst.n(); ++i) {
    const auto d = item_demand(inst.bidders[static_cast<std::size_t>(i)], p);
    if (d.demanded_items != 0 && is_subset(d.demanded_items, s)) out.push_back(i);
  }
  return out;
}

// Xi_p(S): bidders demanding at least one item of S.
inline std::vector<int> xi_set(const Instance& inst, const PriceVector& p, ItemSet s) {
  check_unit_demand(inst);
  check_price(inst, p);
  std::vector<int> out;
  for (int i = 0; i < inst.n(); ++i) {
    const auto d = item_demand(inst.bidders[static_cast<std::size_t>(i)], p);
    if ((d.demanded_items & s) != 0) out.push_back(i);
  }
  return out;
}

// Mishra–Talman over-demand, verbatim weak inequality |Lambda_p(S)| >= |S|.
inline bool mt_over_demanded(const Instance& inst, const PriceVector& p, ItemSet s) {
  return static_cast<int>(lambda_set(inst, p, s).size()) >= set_cardinality(s);
}

inline bool mt_under_demanded(const Instance& inst, const PriceVector& p, ItemSet s) {
  return static_cast<int>(xi_set(inst, p, s).size()) <= set_cardinality(s);
}

// Andersson–Andersson–Talman: S is in excess demand when every non-empty
// T subseteq S has |Lambda_p(S) ∩ Xi_p(T)| > |T|. (With T empty the strict
// inequality is vacuously false, so T ranges over non-empty sets.)
inline bool andersson_excess(const Instance& inst, const PriceVector& p, ItemSet s) {
  if (s == 0) return false;
  const auto lam = lambda_set(inst, p, s);
  for (ItemSet t = s; t; t = (t - 1) & s) {
    const auto xi = xi_set(inst, p, t);
    int both = 0;
    for (int i : lam)
      if (std::find(xi.begin(), xi.end(), i) != xi.end()) ++both;
    if (both <= set_cardinality(t)) return false;
  }
  return true;
}

struct ComparisonRow {
  ItemSet set = 0;
  bool mt_over = false;
  bool general_over = false;       // over-demanded in the bundle framework
  bool mt_under = false;
  bool general_under = false;
  bool andersson = false;
  bool general_excess = false;     // excess-demanded in the bundle framework
};

struct ComparisonReport {
  PriceVector price;
  std::vector<ComparisonRow> rows;  // every non-empty bundle, ascending
  int over_agreements = 0, under_agreements = 0, excess_agreements = 0;
};

inline ComparisonReport compare_with_general(const Instance& inst, const PriceVector& p) {
  check_unit_demand(inst);
  check_price(inst, p);
  const ClassTables t = class_tables(inst, p);
  const auto ed = excess_demand_sets(inst, p);
  ComparisonReport rep;
  rep.price = p;
  for (ItemSet s = 1; s < (ItemSet{1} << inst.m); ++s) {
    ComparisonRow row;
    row.set = s;
    row.mt_over = mt_over_demanded(inst, p, s);
    row.general_over = t.l_sum[s] > set_cardinality(s);
    row.mt_under = mt_under_demanded(inst, p, s);
    row.general_under = t.h_sum[s] < set_cardinality(s);
    row.andersson = andersson_excess(inst, p, s);
    row.general_excess = std::find(ed.begin(), ed.end(), s) != ed.end();
    rep.over_agreements += row.mt_over == row.general_over;
    rep.under_agreements += row.mt_under == row.general_under;
    rep.excess_agreements += row.andersson == row.general_excess;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace unitdemand
}  // namespace walras
