#pragma once

#include <numeric>
#include <vector>

#include "walras/demand.hpp"

namespace walras {

struct LyapunovReport {
  Value value = 0;
  std::vector<Value> bidder_utilities;
  Value price_mass = 0;
};

// L(p) = sum of indirect utilities + total price mass. Dual-feasible: never
// below the optimal welfare, and equal to it exactly on Walrasian prices.
inline LyapunovReport lyapunov(const Instance& inst, const PriceVector& p) {
  check_price(inst, p);
  LyapunovReport rep;
  rep.bidder_utilities.reserve(inst.bidders.size());
  for (const auto& b : inst.bidders) rep.bidder_utilities.push_back(max_utility(b, p));
  rep.price_mass = std::accumulate(p.begin(), p.end(), Value{0});
  rep.value = std::accumulate(rep.bidder_utilities.begin(), rep.bidder_utilities.end(), rep.price_mass);
  return rep;
}

inline Value lyapunov_value(const Instance& inst, const PriceVector& p) {
  return lyapunov(inst, p).value;
}

struct LyapunovDelta {
  Value predicted = 0;  // from the difference identity
  Value actual = 0;     // recomputed from scratch
};

// Raising S: L(p + 1_S) = L(p) - l^p(S) + |S| under gross substitutes.
inline LyapunovDelta delta_up(const Instance& inst, const PriceVector& p, ItemSet s) {
  LyapunovDelta d;
  d.predicted = lyapunov_value(inst, p) - auction_requirement(inst, p, s) + set_cardinality(s);
  d.actual = lyapunov_value(inst, price_raised(p, s));
  return d;
}

// Lowering S: L(p - 1_S) = L(p) + h^p(S) - |S| under gross substitutes.
inline LyapunovDelta delta_down(const Instance& inst, const PriceVector& p, ItemSet s) {
  if (!price_covers(p, s))
    throw std::invalid_argument("delta_down needs every item of S priced at least 1");
  LyapunovDelta d;
  d.predicted = lyapunov_value(inst, p) + auction_redundant(inst, p, s) - set_cardinality(s);
  d.actual = lyapunov_value(inst, price_lowered(p, s));
  return d;
}

struct SubmodularityCheck {
  Value lhs = 0;  // L(meet) + L(join)
  Value rhs = 0;  // L(p) + L(q)
  bool holds = false;
};

inline SubmodularityCheck submodularity_check(const Instance& inst, const PriceVector& p,
                                              const PriceVector& q) {
  check_price(inst, p);
  check_price(inst, q);
  PriceVector meet(p.size()), join(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    meet[j] = std::min(p[j], q[j]);
    join[j] = std::max(p[j], q[j]);
  }
  SubmodularityCheck c;
  c.lhs = lyapunov_value(inst, meet) + lyapunov_value(inst, join);
  c.rhs = lyapunov_value(inst, p) + lyapunov_value(inst, q);
  c.holds = c.lhs <= c.rhs;
  return c;
}

struct GridMinimum {
  Value min_value = 0;
  std::vector<PriceVector> minimizers;  // lexicographic order
};

// Exhaustive argmin of L over {0..vmax}^m. Lowering any coordinate above
// vmax strictly lowers L, so no minimizer lives outside the scan box.
inline GridMinimum grid_minimize_lyapunov(const Instance& inst) {
  const Value vmax = grid_vmax(inst);
  GridMinimum out;
  PriceVector p(static_cast<std::size_t>(inst.m), 0);
  bool first = true;
  do {
    const Value L = lyapunov_value(inst, p);
    if (first || L < out.min_value) {
      out.min_value = L;
      out.minimizers.clear();
      first = false;
    }
    if (L == out.min_value) out.minimizers.push_back(p);
  } while (detail::next_price(p, vmax));
  return out;
}

}  // namespace walras
