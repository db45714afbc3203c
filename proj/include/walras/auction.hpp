#pragma once

#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "walras/equilibrium.hpp"

namespace walras {

// Raised when an auction policy hands back a set outside its candidate
// collection; the engine re-validates every round rather than trusting the
// policy.
struct ContractViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// S is excess-demanded at p when S is over-demanded and no non-empty
// T subseteq S (T = S included) is weakly under-demanded after the raise.
// The raise can only shed demand for subsets it covers, so quantifying over
// subsets is enough.
inline std::vector<ItemSet> excess_demand_sets(const Instance& inst, const PriceVector& p) {
  const ClassTables at_p = class_tables(inst, p);
  std::vector<ItemSet> out;
  for (ItemSet s = 1; s < (ItemSet{1} << inst.m); ++s) {
    if (at_p.l_sum[s] <= set_cardinality(s)) continue;  // not over-demanded
    const ClassTables raised = class_tables(inst, price_raised(p, s));
    bool clean = true;
    for (ItemSet t = s; t; t = (t - 1) & s)
      if (raised.h_sum[t] <= set_cardinality(t)) {  // weakly under-demanded
        clean = false;
        break;
      }
    if (clean) out.push_back(s);
  }
  return out;
}

// Dual: S is dearth-demanded at p when S is under-demanded, every item of S
// is priced at least 1, and no non-empty T subseteq S is weakly
// over-demanded after the cut.
inline std::vector<ItemSet> dearth_demand_sets(const Instance& inst, const PriceVector& p) {
  const ClassTables at_p = class_tables(inst, p);
  std::vector<ItemSet> out;
  for (ItemSet s = 1; s < (ItemSet{1} << inst.m); ++s) {
    if (at_p.h_sum[s] >= set_cardinality(s)) continue;  // not under-demanded
    if (!price_covers(p, s)) continue;
    const ClassTables lowered = class_tables(inst, price_lowered(p, s));
    bool clean = true;
    for (ItemSet t = s; t; t = (t - 1) & s)
      if (lowered.l_sum[t] >= set_cardinality(t)) {  // weakly over-demanded
        clean = false;
        break;
      }
    if (clean) out.push_back(s);
  }
  return out;
}

// Diagnostic for the subset quantifier: sets whose membership flips if the
// quantifier ranges over proper subsets only (T strictly inside S). Under
// gross substitutes the readings agree; disagreements mark non-GS inputs.
inline std::vector<ItemSet> excess_demand_reading_disagreements(const Instance& inst,
                                                                const PriceVector& p) {
  const ClassTables at_p = class_tables(inst, p);
  std::vector<ItemSet> out;
  for (ItemSet s = 1; s < (ItemSet{1} << inst.m); ++s) {
    if (at_p.l_sum[s] <= set_cardinality(s)) continue;
    const ClassTables raised = class_tables(inst, price_raised(p, s));
    bool proper_clean = true;
    for (ItemSet t = (s - 1) & s; t; t = (t - 1) & s)
      if (raised.h_sum[t] <= set_cardinality(t)) {
        proper_clean = false;
        break;
      }
    const bool self_clean = raised.h_sum[s] > set_cardinality(s);
    if (proper_clean && !self_clean) out.push_back(s);
  }
  return out;
}

struct MinimizerResult {
  ItemSet set = 0;
  Value improved = 0;  // L after the step
  bool unique = true;  // false: several incomparable extremal argmins, first returned
};

// Inclusion-minimal argmin of L(p + 1_T) over all T, provided it strictly
// improves on L(p).
inline std::optional<MinimizerResult> minimal_minimizer(const Instance& inst, const PriceVector& p) {
  check_price(inst, p);
  const Value here = lyapunov_value(inst, p);
  Value best = here;
  std::vector<ItemSet> argmin;
  for (ItemSet t = 1; t < (ItemSet{1} << inst.m); ++t) {
    const Value L = lyapunov_value(inst, price_raised(p, t));
    if (L < best) {
      best = L;
      argmin.clear();
    }
    if (L == best && L < here) argmin.push_back(t);
  }
  if (argmin.empty()) return std::nullopt;
  std::vector<ItemSet> minimal;
  for (ItemSet s : argmin) {
    bool has_smaller = false;
    for (ItemSet t : argmin)
      if (t != s && is_subset(t, s)) {
        has_smaller = true;
        break;
      }
    if (!has_smaller) minimal.push_back(s);
  }
  return MinimizerResult{minimal.front(), best, minimal.size() == 1};
}

// Distinguished argmin of L(p - 1_T) over feasible T (p >= 1_T): the argmin
// all of whose proper subsets do strictly worse. With substitutes the argmin
// family is closed under union and intersection, so this is its unique
// inclusion-minimal member, and it is the one the dearth-demand family is
// guaranteed to contain. The inclusion-maximal argmin can stray outside
// dearth demand: two additive bidders valuing (4,1) and (2,1) at price
// (4,4) tie {b} with {a,b} at the same Lyapunov drop, yet the subset {a}
// stays weakly over-demanded after lowering {a,b}, so only {b} qualifies.
inline std::optional<MinimizerResult> maximal_minimizer(const Instance& inst, const PriceVector& p) {
  check_price(inst, p);
  const Value here = lyapunov_value(inst, p);
  Value best = here;
  std::vector<ItemSet> argmin;
  for (ItemSet t = 1; t < (ItemSet{1} << inst.m); ++t) {
    if (!price_covers(p, t)) continue;
    const Value L = lyapunov_value(inst, price_lowered(p, t));
    if (L < best) {
      best = L;
      argmin.clear();
    }
    if (L == best && L < here) argmin.push_back(t);
  }
  if (argmin.empty()) return std::nullopt;
  std::vector<ItemSet> minimal;
  for (ItemSet s : argmin) {
    bool has_smaller = false;
    for (ItemSet t : argmin)
      if (t != s && is_subset(t, s)) {
        has_smaller = true;
        break;
      }
    if (!has_smaller) minimal.push_back(s);
  }
  return MinimizerResult{minimal.front(), best, minimal.size() == 1};
}

// ---- the engine ------------------------------------------------------------

enum class PolicyKind {
  Minimizer,   // minimal minimizer ascending, maximal minimizer descending
  LexFirst,    // smallest bitmask candidate
  Random,      // seeded draw among candidates
  Largest,     // most items, smallest bitmask on ties
};

struct Policy {
  PolicyKind kind = PolicyKind::LexFirst;
  std::uint64_t seed = 0;
};

inline const char* policy_name(PolicyKind k) {
  switch (k) {
    case PolicyKind::Minimizer: return "minimal-minimizer";
    case PolicyKind::LexFirst: return "lex-first";
    case PolicyKind::Random: return "random";
    case PolicyKind::Largest: return "largest";
  }
  return "?";
}

enum class Direction { Ascending, Descending };

struct AuctionRound {
  PriceVector price;   // before the step
  ItemSet chosen = 0;
  Value l_before = 0;
  Value l_after = 0;
  bool in_demand_class = true;        // chosen was excess/dearth demanded
  std::optional<ItemSet> culprit;     // unchecked mode: witness when it was not
};

struct AuctionTrace {
  Direction direction = Direction::Ascending;
  std::string policy;
  std::uint64_t seed = 0;
  bool unchecked = false;
  std::vector<AuctionRound> rounds;
  PriceVector start_price;
  PriceVector final_price;
};

// A selector sees the candidate collection for the current price and picks
// the set to move. Built-in policies are wrapped into one of these.
using Selector = std::function<ItemSet(const std::vector<ItemSet>&, const PriceVector&, int round)>;

struct RunOptions {
  // Checked runs (default) offer only excess/dearth-demanded candidates and
  // enforce the all-GS premise. Unchecked runs offer every over-demanded
  // (resp. under-demanded, feasible) set, skip the premise, and record the
  // lower-bound witness whenever the selection leaves the demand class:
  // the guarantee lemmas become runnable demonstrations.
  bool unchecked = false;
  int m_check_cap = kDefaultGsCheckCap;
};

namespace detail {

inline Selector make_selector(const Instance& inst, Policy policy, Direction dir) {
  switch (policy.kind) {
    case PolicyKind::Minimizer:
      return [&inst, dir](const std::vector<ItemSet>&, const PriceVector& p, int) -> ItemSet {
        const auto r = dir == Direction::Ascending ? minimal_minimizer(inst, p)
                                                   : maximal_minimizer(inst, p);
        if (!r) throw ContractViolation("minimizer policy invoked with no improving step");
        return r->set;
      };
    case PolicyKind::LexFirst:
      return [](const std::vector<ItemSet>& cands, const PriceVector&, int) { return cands.front(); };
    case PolicyKind::Random:
      return [gen = std::mt19937_64(policy.seed)](const std::vector<ItemSet>& cands,
                                                  const PriceVector&, int) mutable {
        // Plain modulo keeps the draw identical across platforms.
        return cands[static_cast<std::size_t>(gen() % cands.size())];
      };
    case PolicyKind::Largest:
      return [](const std::vector<ItemSet>& cands, const PriceVector&, int) {
        ItemSet best = cands.front();
        for (ItemSet s : cands)
          if (set_cardinality(s) > set_cardinality(best)) best = s;
        return best;
      };
  }
  throw std::invalid_argument("unknown policy");
}

// Smallest non-empty weakly under-demanded set after raising S (ascending)
// or weakly over-demanded set after lowering S (descending). The lower-bound
// lemmas guarantee one exists whenever a non-empty S outside the demand
// class is moved.
inline std::optional<ItemSet> lower_bound_culprit(const Instance& inst, const PriceVector& p,
                                                  ItemSet s, Direction dir) {
  const ClassTables t = class_tables(
      inst, dir == Direction::Ascending ? price_raised(p, s) : price_lowered(p, s));
  for (ItemSet c = 1; c < (ItemSet{1} << inst.m); ++c) {
    const bool hit = dir == Direction::Ascending ? t.h_sum[c] <= set_cardinality(c)
                                                 : t.l_sum[c] >= set_cardinality(c);
    if (hit) return c;
  }
  return std::nullopt;
}

inline AuctionTrace run_auction(const Instance& inst, Direction dir, const Selector& select,
                                const std::string& policy, std::uint64_t seed,
                                const RunOptions& opts) {
  if (!opts.unchecked) {
    if (auto fail = all_gross_substitutes(inst, opts.m_check_cap))
      throw PremiseError("bidder " + std::to_string(fail->bidder) +
                         " is not gross-substitute; pass --unchecked to run anyway");
  }
  const Value vmax = grid_vmax(inst);
  AuctionTrace trace;
  trace.direction = dir;
  trace.policy = policy;
  trace.seed = seed;
  trace.unchecked = opts.unchecked;
  PriceVector p(static_cast<std::size_t>(inst.m),
                dir == Direction::Ascending ? Value{0} : vmax);
  trace.start_price = p;

  // Generous termination insurance: ascending stops once every item is
  // priced beyond vmax, descending strictly lowers price mass every round.
  const long long round_limit = (vmax + 2) * inst.m + 4;
  for (long long round = 0;; ++round) {
    if (round > round_limit)
      throw ContractViolation("auction exceeded its round budget; this cannot happen for monotone valuations");
    const auto strict = dir == Direction::Ascending ? excess_demand_sets(inst, p)
                                                    : dearth_demand_sets(inst, p);
    std::vector<ItemSet> candidates = strict;
    if (opts.unchecked) {
      candidates = dir == Direction::Ascending
                       ? enumerate_class(inst, p, SetClass::OverDemanded)
                       : enumerate_class(inst, p, SetClass::UnderDemanded);
      if (dir == Direction::Descending)
        std::erase_if(candidates, [&](ItemSet s) { return !price_covers(p, s); });
    }
    if (candidates.empty()) break;

    const ItemSet chosen = select(candidates, p, static_cast<int>(round));
    if (std::find(candidates.begin(), candidates.end(), chosen) == candidates.end())
      throw ContractViolation("policy \"" + policy + "\" chose " + format_set(chosen) +
                              " outside its candidate collection at " + format_price(p));

    AuctionRound rec;
    rec.price = p;
    rec.chosen = chosen;
    rec.l_before = lyapunov_value(inst, p);
    rec.in_demand_class =
        std::find(strict.begin(), strict.end(), chosen) != strict.end();
    if (!rec.in_demand_class) rec.culprit = lower_bound_culprit(inst, p, chosen, dir);
    p = dir == Direction::Ascending ? price_raised(p, chosen) : price_lowered(p, chosen);
    rec.l_after = lyapunov_value(inst, p);
    trace.rounds.push_back(std::move(rec));
  }
  trace.final_price = p;
  return trace;
}

}  // namespace detail

inline AuctionTrace run_ascending(const Instance& inst, Policy policy, RunOptions opts = {}) {
  return detail::run_auction(inst, Direction::Ascending,
                             detail::make_selector(inst, policy, Direction::Ascending),
                             policy_name(policy.kind), policy.seed, opts);
}

inline AuctionTrace run_descending(const Instance& inst, Policy policy, RunOptions opts = {}) {
  return detail::run_auction(inst, Direction::Descending,
                             detail::make_selector(inst, policy, Direction::Descending),
                             policy_name(policy.kind), policy.seed, opts);
}

// Custom-selector entry points, used by tests to probe the engine contract.
inline AuctionTrace run_ascending(const Instance& inst, const Selector& select,
                                  RunOptions opts = {}) {
  return detail::run_auction(inst, Direction::Ascending, select, "custom", 0, opts);
}

inline AuctionTrace run_descending(const Instance& inst, const Selector& select,
                                   RunOptions opts = {}) {
  return detail::run_auction(inst, Direction::Descending, select, "custom", 0, opts);
}

struct LowerBoundWitness {
  PriceVector price;
  ItemSet moved = 0;
  ItemSet culprit = 0;  // non-empty, weakly under/over-demanded after the move
  int h_or_l = 0;
  int cardinality = 0;
};

// Why raising a non-excess-demanded S cannot be part of any sound ascent:
// some non-empty T is weakly under-demanded at p + 1_S, capping L from below.
inline std::optional<LowerBoundWitness> demonstrate_asc_necessity(const Instance& inst,
                                                                  const PriceVector& p, ItemSet s) {
  check_price(inst, p);
  if (s == 0) throw std::invalid_argument("necessity demonstration needs a non-empty set");
  const auto ed = excess_demand_sets(inst, p);
  if (std::find(ed.begin(), ed.end(), s) != ed.end())
    throw std::invalid_argument(format_set(s) + " is excess-demanded here; nothing to demonstrate");
  const ClassTables t = class_tables(inst, price_raised(p, s));
  for (ItemSet c = 1; c < (ItemSet{1} << inst.m); ++c)
    if (t.h_sum[c] <= set_cardinality(c))
      return LowerBoundWitness{p, s, c, t.h_sum[c], set_cardinality(c)};
  return std::nullopt;
}

inline std::optional<LowerBoundWitness> demonstrate_desc_necessity(const Instance& inst,
                                                                   const PriceVector& p, ItemSet s) {
  check_price(inst, p);
  if (s == 0) throw std::invalid_argument("necessity demonstration needs a non-empty set");
  if (!price_covers(p, s))
    throw std::invalid_argument("every item of S must be priced at least 1");
  const auto dd = dearth_demand_sets(inst, p);
  if (std::find(dd.begin(), dd.end(), s) != dd.end())
    throw std::invalid_argument(format_set(s) + " is dearth-demanded here; nothing to demonstrate");
  const ClassTables t = class_tables(inst, price_lowered(p, s));
  for (ItemSet c = 1; c < (ItemSet{1} << inst.m); ++c)
    if (t.l_sum[c] >= set_cardinality(c))
      return LowerBoundWitness{p, s, c, t.l_sum[c], set_cardinality(c)};
  return std::nullopt;
}

}  // namespace walras
