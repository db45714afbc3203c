#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "walras/lyapunov.hpp"

namespace walras {

struct Allocation {
  std::vector<ItemSet> bundles;  // one per bidder
  Value welfare = 0;
  bool partition = true;  // bundles are disjoint and cover all items
};

namespace detail {

// Assignments walk item-major, bidder-minor: item 0's owner is the most
// significant digit and every digit counts bidders upward, so "first found"
// is well defined everywhere a certificate is reported.
template <class Visit>
inline void for_each_assignment(int m, int n, Visit&& visit) {
  std::vector<int> owner(static_cast<std::size_t>(m), 0);
  for (;;) {
    if (!visit(owner)) return;
    int j = m;
    while (j-- > 0) {
      if (++owner[static_cast<std::size_t>(j)] < n) break;
      owner[static_cast<std::size_t>(j)] = 0;
    }
    if (j < 0) return;
  }
}

inline std::vector<ItemSet> bundles_of(const std::vector<int>& owner, int n) {
  std::vector<ItemSet> bundles(static_cast<std::size_t>(n), 0);
  for (std::size_t j = 0; j < owner.size(); ++j)
    bundles[static_cast<std::size_t>(owner[j])] |= ItemSet{1} << j;
  return bundles;
}

}  // namespace detail

// Exhaustive welfare maximization over all n^m item assignments. Values are
// monotone, so handing every item out is never worse than withholding one;
// the lexicographically first optimal assignment is returned.
inline Allocation max_welfare(const Instance& inst) {
  Allocation best;
  bool have = false;
  detail::for_each_assignment(inst.m, inst.n(), [&](const std::vector<int>& owner) {
    auto bundles = detail::bundles_of(owner, inst.n());
    Value w = 0;
    for (int i = 0; i < inst.n(); ++i)
      w += inst.bidders[static_cast<std::size_t>(i)].values[bundles[static_cast<std::size_t>(i)]];
    if (!have || w > best.welfare) {
      best.bundles = std::move(bundles);
      best.welfare = w;
      have = true;
    }
    return true;
  });
  return best;
}

// First partition (in assignment order) in which every bidder receives a
// demanded bundle, i.e. a Walrasian certificate for p.
inline std::optional<Allocation> is_walrasian(const Instance& inst, const PriceVector& p) {
  check_price(inst, p);
  // Demand collections once per bidder; membership tested per assignment.
  std::vector<std::vector<char>> demanded(inst.bidders.size(),
                                          std::vector<char>(std::size_t{1} << inst.m, 0));
  std::vector<ItemSet> dsets;
  for (std::size_t i = 0; i < inst.bidders.size(); ++i) {
    detail::demand_scan(inst.bidders[i], p, dsets);
    for (ItemSet d : dsets) demanded[i][d] = 1;
  }
  std::optional<Allocation> found;
  detail::for_each_assignment(inst.m, inst.n(), [&](const std::vector<int>& owner) {
    auto bundles = detail::bundles_of(owner, inst.n());
    for (int i = 0; i < inst.n(); ++i)
      if (!demanded[static_cast<std::size_t>(i)][bundles[static_cast<std::size_t>(i)]]) return true;
    Allocation a;
    a.bundles = std::move(bundles);
    for (int i = 0; i < inst.n(); ++i)
      a.welfare += inst.bidders[static_cast<std::size_t>(i)].values[a.bundles[static_cast<std::size_t>(i)]];
    found = std::move(a);
    return false;
  });
  return found;
}

// All Walrasian price vectors in {0..vmax}^m, lexicographic. Complete: no
// Walrasian vector prices an item above vmax (such an item would belong to
// no demanded bundle and could not be allocated).
inline std::vector<PriceVector> walrasian_set(const Instance& inst) {
  std::vector<PriceVector> out;
  const Value vmax = grid_vmax(inst);
  PriceVector p(static_cast<std::size_t>(inst.m), 0);
  do {
    if (is_walrasian(inst, p)) out.push_back(p);
  } while (detail::next_price(p, vmax));
  return out;
}

struct ExtremePrice {
  PriceVector price;
  bool walrasian = false;  // lattice closure can fail off the GS premise
};

namespace detail {

inline std::optional<ExtremePrice> extreme_walrasian(const Instance& inst, bool want_min) {
  const auto all = walrasian_set(inst);
  if (all.empty()) return std::nullopt;
  PriceVector ext = all.front();
  for (const auto& p : all)
    for (std::size_t j = 0; j < p.size(); ++j)
      ext[j] = want_min ? std::min(ext[j], p[j]) : std::max(ext[j], p[j]);
  ExtremePrice r;
  r.price = std::move(ext);
  r.walrasian = is_walrasian(inst, r.price).has_value();
  return r;
}

}  // namespace detail

inline std::optional<ExtremePrice> min_walrasian(const Instance& inst) {
  return detail::extreme_walrasian(inst, true);
}

inline std::optional<ExtremePrice> max_walrasian(const Instance& inst) {
  return detail::extreme_walrasian(inst, false);
}

// ---- the price characterization ------------------------------------------

// Substitutability premise for instance-level statements. Additive and
// unit-demand valuations substitute by construction; explicit tables get the
// grid check (within the cap).
struct PremiseFailure {
  int bidder = 0;
  GsWitness witness;
};

// Raised when an operation whose guarantees need the substitutes premise is
// asked to run on an instance that fails it, and the caller did not opt out.
struct PremiseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::optional<PremiseFailure> all_gross_substitutes(const Instance& inst,
                                                           int m_check_cap = kDefaultGsCheckCap) {
  for (int i = 0; i < inst.n(); ++i) {
    const Valuation& v = inst.bidders[static_cast<std::size_t>(i)];
    if (v.kind != ValuationKind::Table) continue;
    if (auto w = is_gross_substitute(v, m_check_cap)) return PremiseFailure{i, *w};
  }
  return std::nullopt;
}

struct CharacterizationVerdict {
  bool walrasian = false;
  bool minimum = false;
  bool maximum = false;
  // First offending set per failed predicate, ascending bitmask order.
  std::optional<SetClassification> walras_evidence;  // over- or under-demanded set
  std::optional<SetClassification> min_evidence;     // non-empty weakly under-demanded set
  std::optional<SetClassification> max_evidence;     // non-empty weakly over-demanded set
};

// Purely from over/under-demand: Walrasian iff no over-demanded and no
// under-demanded set; minimum iff additionally no non-empty weakly
// under-demanded set; maximum iff no non-empty weakly over-demanded set.
// Sound under the all-GS premise; check_premise=false reports the same
// comparison without vouching for it.
inline CharacterizationVerdict characterize(const Instance& inst, const PriceVector& p,
                                            bool check_premise = true,
                                            int m_check_cap = kDefaultGsCheckCap) {
  if (check_premise) {
    if (auto fail = all_gross_substitutes(inst, m_check_cap))
      throw PremiseError("bidder " + std::to_string(fail->bidder) +
                         " is not gross-substitute (witness at " +
                         format_price(fail->witness.price) + ", " +
                         format_set(fail->witness.set) + "); pass --force to classify anyway");
  }
  const ClassTables t = class_tables(inst, p);
  CharacterizationVerdict v;
  v.walrasian = true;
  v.minimum = true;
  v.maximum = true;
  for (ItemSet s = 1; s < (ItemSet{1} << inst.m); ++s) {
    const auto c = classify_from(t, s);
    if ((c.over || c.under) && !v.walras_evidence) {
      v.walrasian = false;
      v.walras_evidence = c;
    }
    if (c.weakly_under && !v.min_evidence) {
      v.minimum = false;
      v.min_evidence = c;
    }
    if (c.weakly_over && !v.max_evidence) {
      v.maximum = false;
      v.max_evidence = c;
    }
  }
  v.minimum = v.minimum && v.walrasian;
  v.maximum = v.maximum && v.walrasian;
  return v;
}

// Meet and join of two Walrasian vectors are again Walrasian (under GS).
// Verified against the allocation oracle, preconditions included.
inline bool lattice_check(const Instance& inst, const PriceVector& p, const PriceVector& q) {
  check_price(inst, p);
  check_price(inst, q);
  if (!is_walrasian(inst, p) || !is_walrasian(inst, q))
    throw std::invalid_argument("lattice check requires two Walrasian price vectors");
  PriceVector meet(p.size()), join(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    meet[j] = std::min(p[j], q[j]);
    join[j] = std::max(p[j], q[j]);
  }
  return is_walrasian(inst, meet).has_value() && is_walrasian(inst, join).has_value();
}

}  // namespace walras
