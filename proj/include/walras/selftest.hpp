#pragma once

#include <algorithm>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "walras/auction.hpp"
#include "walras/grid.hpp"
#include "walras/io.hpp"

namespace walras {

struct Counterexample {
  std::string operation;    // module entry point that replays the record
  nlohmann::json details;   // inputs and both sides, bit-for-bit
};

struct SuiteResult {
  std::string name;
  bool premise_free = false;  // meaningful without the all-GS premise
  bool skipped = false;
  std::string note;
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  std::optional<Counterexample> first;
};

struct SweepReport {
  std::string digest;  // FNV-1a of the canonical serialization
  int m = 0, n = 0;
  Value vmax = 0;
  bool premise_ok = false;
  bool forced = false;
  std::optional<PremiseFailure> premise_failure;
  std::vector<SuiteResult> suites;

  bool passed() const {
    for (const auto& s : suites)
      if (!s.skipped && s.failures) return false;
    return true;
  }
};

struct SelftestOptions {
  unsigned jobs = 1;
  // Run the premise-dependent suites even when a bidder fails the
  // substitutes check; their failures then document what breaks.
  bool force = false;
  int m_check_cap = kDefaultGsCheckCap;
};

namespace detail {

inline std::string fnv_digest(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline nlohmann::json price_json(const PriceVector& p) { return nlohmann::json(p); }

inline nlohmann::json set_json(ItemSet s) { return nlohmann::json(set_items(s)); }

// Accumulator with an order-independent merge: counters add, the lowest
// rank keeps its counterexample. Rank is derived from the lexicographic
// sweep position, so the result is identical for any worker count.
struct SuiteAccum {
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  std::uint64_t first_rank = ~std::uint64_t{0};
  std::optional<Counterexample> first;

  void fail(std::uint64_t rank, const char* op, nlohmann::json details) {
    ++failures;
    if (rank < first_rank) {
      first_rank = rank;
      first = Counterexample{op, std::move(details)};
    }
  }

  void merge(SuiteAccum&& o) {
    checked += o.checked;
    failures += o.failures;
    if (o.first_rank < first_rank) {
      first_rank = o.first_rank;
      first = std::move(o.first);
    }
  }
};

// The sweep quantifies prices over {0..box_max}^m, a sub-box of the table
// grid chosen so that every lookup at p +- 1_S stays inside the tables.
struct SweepBox {
  const GridTables* t = nullptr;
  Value box_max = 0;
  std::size_t count = 0;          // (box_max+1)^m
  std::vector<std::size_t> sub;   // mixed-radix strides of the sub-box

  SweepBox(const GridTables& tables, Value bm) : t(&tables), box_max(bm) {
    sub.assign(static_cast<std::size_t>(t->m), 1);
    for (int j = t->m - 2; j >= 0; --j)
      sub[static_cast<std::size_t>(j)] =
          sub[static_cast<std::size_t>(j) + 1] * (static_cast<std::size_t>(box_max) + 1);
    count = sub.empty() ? 0 : sub[0] * (static_cast<std::size_t>(box_max) + 1);
  }

  void decode(std::size_t rank, PriceVector& p, std::size_t& idx) const {
    idx = 0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      const auto c = rank / sub[j];
      rank %= sub[j];
      p[j] = static_cast<Value>(c);
      idx += c * t->stride[j];
    }
  }
};

// body(rank, price, grid_idx, accum) runs per sweep point; chunks merge in
// rank order.
template <class Body>
inline SuiteAccum sweep_points(const SweepBox& box, unsigned jobs, Body&& body) {
  std::vector<SuiteAccum> parts(std::max<unsigned>(jobs, 1));
  parallel_chunks(box.count, jobs, [&](unsigned w, std::size_t begin, std::size_t end) {
    SuiteAccum local;
    PriceVector p(static_cast<std::size_t>(box.t->m));
    std::size_t idx = 0;
    for (std::size_t rank = begin; rank < end; ++rank) {
      box.decode(rank, p, idx);
      body(rank, p, idx, local);
    }
    parts[w].merge(std::move(local));
  });
  SuiteAccum total;
  for (auto& part : parts) total.merge(std::move(part));
  return total;
}

inline bool covers(const PriceVector& p, ItemSet s) {
  for (ItemSet rem = s; rem;) {
    const int j = std::countr_zero(rem);
    rem &= rem - 1;
    if (p[static_cast<std::size_t>(j)] < 1) return false;
  }
  return true;
}

// Excess/dearth membership straight from the tables.
inline bool ed_member(const GridTables& t, std::size_t idx, ItemSet s) {
  if (t.lsum(idx, s) <= set_cardinality(s)) return false;
  const std::size_t up = idx + t.set_stride[s];
  for (ItemSet q = s; q; q = (q - 1) & s)
    if (t.hsum(up, q) <= set_cardinality(q)) return false;
  return true;
}

inline bool dd_member(const GridTables& t, std::size_t idx, const PriceVector& p, ItemSet s) {
  if (t.hsum(idx, s) >= set_cardinality(s)) return false;
  if (!covers(p, s)) return false;
  const std::size_t down = idx - t.set_stride[s];
  for (ItemSet q = s; q; q = (q - 1) & s)
    if (t.lsum(down, q) >= set_cardinality(q)) return false;
  return true;
}

}  // namespace detail

// Everything the suites share: tables over {0..vmax+2}^m, the checked box
// {0..vmax+1}^m, the Walrasian set with its meet and join, and the optimal
// welfare.
struct SweepContext {
  Instance inst;
  GridTables tables;
  Value vmax = 0;
  Value check_max = 0;  // vmax + 1
  std::vector<std::size_t> walrasian_idx;  // ascending grid indices
  std::optional<PriceVector> meet, join;
  Value welfare = 0;
  unsigned jobs = 1;

  bool is_walrasian_idx(std::size_t idx) const {
    return std::binary_search(walrasian_idx.begin(), walrasian_idx.end(), idx);
  }
};

inline SweepContext make_sweep_context(const Instance& inst, unsigned jobs = 1) {
  SweepContext cx;
  cx.inst = inst;
  cx.vmax = grid_vmax(inst);
  cx.check_max = cx.vmax + 1;
  cx.jobs = std::max(1u, jobs);
  cx.tables = build_grid_tables(inst, cx.vmax + 2, cx.jobs);
  cx.welfare = max_welfare(inst).welfare;

  // Walrasian vectors all live inside {0..vmax}^m.
  const detail::SweepBox box(cx.tables, cx.vmax);
  std::vector<std::vector<std::size_t>> parts(cx.jobs);
  detail::parallel_chunks(box.count, cx.jobs, [&](unsigned w, std::size_t begin, std::size_t end) {
    PriceVector p(static_cast<std::size_t>(inst.m));
    std::size_t idx = 0;
    for (std::size_t rank = begin; rank < end; ++rank) {
      box.decode(rank, p, idx);
      if (partition_exists(cx.tables, idx)) parts[w].push_back(idx);
    }
  });
  for (auto& part : parts)
    cx.walrasian_idx.insert(cx.walrasian_idx.end(), part.begin(), part.end());

  if (!cx.walrasian_idx.empty()) {
    PriceVector meet = cx.tables.price_at(cx.walrasian_idx.front());
    PriceVector join = meet;
    for (std::size_t idx : cx.walrasian_idx) {
      const PriceVector p = cx.tables.price_at(idx);
      for (std::size_t j = 0; j < p.size(); ++j) {
        meet[j] = std::min(meet[j], p[j]);
        join[j] = std::max(join[j], p[j]);
      }
    }
    cx.meet = std::move(meet);
    cx.join = std::move(join);
  }
  return cx;
}

namespace detail {

inline SuiteResult finish(const char* name, bool premise_free, SuiteAccum&& acc,
                          std::string note = {}) {
  SuiteResult r;
  r.name = name;
  r.premise_free = premise_free;
  r.checked = acc.checked;
  r.failures = acc.failures;
  r.first = std::move(acc.first);
  r.note = std::move(note);
  return r;
}

// u_i(p) = u_i(p + 1_S) + l_{i,p}(S) for every bidder, price, non-empty S.
inline SuiteResult suite_ascent_identity(const SweepContext& cx) {
  const auto& t = cx.tables;
  const SweepBox box(t, cx.check_max);
  auto acc = sweep_points(box, cx.jobs, [&](std::size_t rank, const PriceVector& p,
                                            std::size_t idx, SuiteAccum& a) {
    for (ItemSet s = 1; s < (ItemSet{1} << t.m); ++s) {
      const std::size_t up = idx + t.set_stride[s];
      for (int i = 0; i < t.n; ++i) {
        ++a.checked;
        const Value lhs = t.bidder_utility(idx, i);
        const Value rhs = t.bidder_utility(up, i) + t.l_of(idx, i, s);
        if (lhs != rhs)
          a.fail((rank << t.m | s) * 16 + static_cast<std::uint64_t>(i), "demand.max_utility",
                 {{"bidder", i}, {"price", price_json(p)}, {"set", set_json(s)},
                  {"lhs", lhs}, {"rhs", rhs}});
      }
    }
  });
  return finish("ascent-identity", false, std::move(acc));
}

// u_i(p) = u_i(p - 1_S) - h_{i,p}(S) whenever p covers S.
inline SuiteResult suite_descent_identity(const SweepContext& cx) {
  const auto& t = cx.tables;
  const SweepBox box(t, cx.check_max);
  auto acc = sweep_points(box, cx.jobs, [&](std::size_t rank, const PriceVector& p,
                                            std::size_t idx, SuiteAccum& a) {
    for (ItemSet s = 1; s < (ItemSet{1} << t.m); ++s) {
      if (!covers(p, s)) continue;
      const std::size_t down = idx - t.set_stride[s];
      for (int i = 0; i < t.n; ++i) {
        ++a.checked;
        const Value lhs = t.bidder_utility(idx, i);
        const Value rhs = t.bidder_utility(down, i) - t.h_of(idx, i, s);
        if (lhs != rhs)
          a.fail((rank << t.m | s) * 16 + static_cast<std::uint64_t>(i), "demand.dual_gs_check",
                 {{"bidder", i}, {"price", price_json(p)}, {"set", set_json(s)},
                  {"lhs", lhs}, {"rhs", rhs}});
      }
    }
  });
  return finish("descent-identity", false, std::move(acc));
}

// L(p + 1_S) = L(p) - l^p(S) + |S| and L(p - 1_S) = L(p) + h^p(S) - |S|.
inline SuiteResult suite_difference_identities(const SweepContext& cx) {
  const auto& t = cx.tables;
  const SweepBox box(t, cx.check_max);
  auto acc = sweep_points(box, cx.jobs, [&](std::size_t rank, const PriceVector& p,
                                            std::size_t idx, SuiteAccum& a) {
    for (ItemSet s = 1; s < (ItemSet{1} << t.m); ++s) {
      const int card = set_cardinality(s);
      ++a.checked;
      const Value up_pred = t.L[idx] - t.lsum(idx, s) + card;
      const Value up_act = t.L[idx + t.set_stride[s]];
      if (up_pred != up_act) {
        a.fail((rank << t.m | s) * 2, "lyapunov.delta_up",
               {{"price", price_json(p)}, {"set", set_json(s)},
                {"predicted", up_pred}, {"actual", up_act}});
        continue;
      }
      if (covers(p, s)) {
        ++a.checked;
        const Value down_pred = t.L[idx] + t.hsum(idx, s) - card;
        const Value down_act = t.L[idx - t.set_stride[s]];
        if (down_pred != down_act)
          a.fail((rank << t.m | s) * 2 + 1, "lyapunov.delta_down",
                 {{"price", price_json(p)}, {"set", set_json(s)},
                  {"predicted", down_pred}, {"actual", down_act}});
      }
    }
  });
  return finish("difference-identities", false, std::move(acc));
}

// Walrasian iff no over- and no under-demanded set; minimum iff the weakly
// under-demanded family is trivial; maximum dually. Each verdict is checked
// against partition existence and against the meet/join of the scanned
// Walrasian set.
inline SuiteResult suite_price_characterization(const SweepContext& cx) {
  const auto& t = cx.tables;
  const SweepBox box(t, cx.check_max);
  const std::size_t meet_idx = cx.meet ? t.index(*cx.meet) : ~std::size_t{0};
  const std::size_t join_idx = cx.join ? t.index(*cx.join) : ~std::size_t{0};
  // A lone bidder never has h(S) > |S|, so the minimum criterion is void
  // there; the maximum criterion survives (raising prices is always feasible).
  const bool check_min = cx.inst.n() >= 2;
  auto acc = sweep_points(box, cx.jobs, [&](std::size_t rank, const PriceVector& p,
                                            std::size_t idx, SuiteAccum& a) {
    bool walras = true, minimum = true, maximum = true;
    for (ItemSet s = 1; s < (ItemSet{1} << t.m); ++s) {
      const int card = set_cardinality(s);
      const int l = t.lsum(idx, s), h = t.hsum(idx, s);
      if (l > card || h < card) walras = false;
      if (h <= card) minimum = false;
      if (l >= card) maximum = false;
    }
    minimum = minimum && walras;
    maximum = maximum && walras;

    ++a.checked;
    const bool oracle = partition_exists(t, idx);
    if (walras != oracle) {
      a.fail(rank * 4, "equilibrium.characterize",
             {{"price", price_json(p)}, {"classified", walras}, {"partition", oracle}});
      return;
    }
    if (cx.meet) {
      if (check_min) {
        ++a.checked;
        if (minimum != (idx == meet_idx))
          a.fail(rank * 4 + 1, "equilibrium.min_walrasian",
                 {{"price", price_json(p)}, {"classified_min", minimum},
                  {"meet", price_json(*cx.meet)}});
      }
      ++a.checked;
      if (maximum != (idx == join_idx))
        a.fail(rank * 4 + 2, "equilibrium.max_walrasian",
               {{"price", price_json(p)}, {"classified_max", maximum},
                {"join", price_json(*cx.join)}});
    }
  });
  std::string note;
  if (!cx.meet) {
    note = "walrasian set empty; extremes unchecked";
    acc.fail(~std::uint64_t{0} - 1, "equilibrium.walrasian_set",
             {{"walrasian_count", 0}});
  } else if (!check_min) {
    note = "single bidder: minimum criterion void, meet equivalence skipped";
  }
  return finish("price-characterization", false, std::move(acc), std::move(note));
}

// L(meet) + L(join) <= L(p) + L(q) over sampled or exhaustive pairs.
inline SuiteResult suite_lyapunov_submodularity(const SweepContext& cx) {
  constexpr std::uint64_t kPairBudget = 100'000;
  const auto& t = cx.tables;
  const SweepBox box(t, cx.check_max);
  SuiteAccum acc;
  PriceVector p(static_cast<std::size_t>(t.m)), q(p), meet(p), join(p);

  auto check_pair = [&](std::uint64_t rank) {
    ++acc.checked;
    std::size_t pi = 0, qi = 0, mi = 0, ji = 0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      meet[j] = std::min(p[j], q[j]);
      join[j] = std::max(p[j], q[j]);
      pi += static_cast<std::size_t>(p[j]) * t.stride[j];
      qi += static_cast<std::size_t>(q[j]) * t.stride[j];
      mi += static_cast<std::size_t>(meet[j]) * t.stride[j];
      ji += static_cast<std::size_t>(join[j]) * t.stride[j];
    }
    const Value lhs = t.L[mi] + t.L[ji];
    const Value rhs = t.L[pi] + t.L[qi];
    if (lhs > rhs)
      acc.fail(rank, "lyapunov.submodularity_check",
               {{"p", price_json(p)}, {"q", price_json(q)}, {"lhs", lhs}, {"rhs", rhs}});
  };

  const std::uint64_t full = static_cast<std::uint64_t>(box.count) * box.count;
  if (full <= kPairBudget) {
    std::size_t dummy;
    for (std::size_t a = 0; a < box.count; ++a) {
      box.decode(a, p, dummy);
      for (std::size_t b = 0; b < box.count; ++b) {
        box.decode(b, q, dummy);
        check_pair(a * box.count + b);
      }
    }
  } else {
    std::mt19937_64 gen(0x7a1e5u);  // fixed seed: the sample is part of the contract
    const std::uint64_t per = static_cast<std::uint64_t>(cx.check_max) + 1;
    for (std::uint64_t k = 0; k < kPairBudget; ++k) {
      for (auto& c : p) c = static_cast<Value>(gen() % per);
      for (auto& c : q) c = static_cast<Value>(gen() % per);
      check_pair(k);
    }
  }
  return finish("lyapunov-submodularity", false, std::move(acc));
}

// The Walrasian set is closed under coordinate-wise min and max.
inline SuiteResult suite_walrasian_lattice(const SweepContext& cx) {
  const auto& t = cx.tables;
  SuiteAccum acc;
  const auto& w = cx.walrasian_idx;
  PriceVector meet(static_cast<std::size_t>(t.m)), join(meet);
  for (std::size_t a = 0; a < w.size(); ++a) {
    const PriceVector pa = t.price_at(w[a]);
    for (std::size_t b = a; b < w.size(); ++b) {
      const PriceVector pb = t.price_at(w[b]);
      for (std::size_t j = 0; j < pa.size(); ++j) {
        meet[j] = std::min(pa[j], pb[j]);
        join[j] = std::max(pa[j], pb[j]);
      }
      ++acc.checked;
      if (!cx.is_walrasian_idx(t.index(meet)) || !cx.is_walrasian_idx(t.index(join)))
        acc.fail(a * w.size() + b, "equilibrium.lattice_check",
                 {{"p", price_json(pa)}, {"q", price_json(pb)}});
    }
  }
  return finish("walrasian-lattice", false, std::move(acc));
}

// Raising prices off S never lowers what a bidder must take of S: for
// disjoint non-empty S, T it holds that l_{i,p}(S) <= l_{i,p+1_T}(S).
// Proof from submodularity of the maximum utility in the price: with
// q = p + 1_T, u(p) + u(q + 1_S) <= u(p + 1_S) + u(q), and the two
// differences are the requirements at p and q. Unit demand already shows
// the reverse inequality is wrong: one bidder valuing items 2 and 1, at
// price (1,0), demands {a}, {b} and {a,b} so l({a}) = 0, yet raising b's
// price to 1 shrinks the demand collection to {{a}} and l({a}) = 1.
inline SuiteResult suite_requirement_monotonicity(const SweepContext& cx) {
  const auto& t = cx.tables;
  const SweepBox box(t, cx.check_max);
  auto acc = sweep_points(box, cx.jobs, [&](std::size_t rank, const PriceVector& p,
                                            std::size_t idx, SuiteAccum& a) {
    const ItemSet omega = full_set(t.m);
    for (ItemSet s = 1; s < (ItemSet{1} << t.m); ++s) {
      const ItemSet rest = omega & ~s;
      for (ItemSet d = rest; d; d = (d - 1) & rest) {
        const std::size_t up = idx + t.set_stride[d];
        for (int i = 0; i < t.n; ++i) {
          ++a.checked;
          if (t.l_of(idx, i, s) > t.l_of(up, i, s))
            a.fail((rank << (2 * t.m) | (std::uint64_t{s} << t.m) | d) * 16 +
                       static_cast<std::uint64_t>(i),
                   "demand.requirement",
                   {{"bidder", i}, {"price", price_json(p)}, {"set", set_json(s)},
                    {"raised", set_json(d)}, {"before", t.l_of(idx, i, s)},
                    {"after", t.l_of(up, i, s)}});
        }
      }
    }
  });
  return finish("requirement-monotonicity", false, std::move(acc));
}

// Every non-demanded bundle has a strictly better neighbor differing by at
// most one item each way.
inline SuiteResult suite_single_improvement(const SweepContext& cx) {
  const auto& t = cx.tables;
  const SweepBox box(t, cx.check_max);
  auto acc = sweep_points(box, cx.jobs, [&](std::size_t rank, const PriceVector& p,
                                            std::size_t idx, SuiteAccum& a) {
    thread_local std::vector<Value> mass;
    subset_price_sums(p, t.m, mass);
    const std::size_t bundles = std::size_t{1} << t.m;
    for (int i = 0; i < t.n; ++i) {
      const auto& values = cx.inst.bidders[static_cast<std::size_t>(i)].values;
      const std::uint64_t demanded = t.demand_mask(idx, i);
      for (std::size_t s = 0; s < bundles; ++s) {
        if ((demanded >> s) & 1) continue;
        ++a.checked;
        const Value us = values[s] - mass[s];
        bool improved = false;
        for (std::size_t c = 0; c < bundles && !improved; ++c) {
          if (set_cardinality(static_cast<ItemSet>(c & ~s)) > 1 ||
              set_cardinality(static_cast<ItemSet>(s & ~c)) > 1)
            continue;
          improved = values[c] - mass[c] > us;
        }
        if (!improved)
          a.fail((rank << t.m | s) * 16 + static_cast<std::uint64_t>(i),
                 "demand.single_improvement",
                 {{"bidder", i}, {"price", price_json(p)}, {"set", set_json(static_cast<ItemSet>(s))}});
      }
    }
  });
  return finish("single-improvement", false, std::move(acc));
}

// min L over the price grid equals the optimal welfare, attained exactly on
// the Walrasian set; L never dips below welfare anywhere.
inline SuiteResult suite_strong_duality(const SweepContext& cx) {
  const auto& t = cx.tables;
  SuiteAccum acc;

  const SweepBox wide(t, cx.check_max);
  {
    PriceVector p(static_cast<std::size_t>(t.m));
    std::size_t idx = 0;
    for (std::size_t rank = 0; rank < wide.count; ++rank) {
      wide.decode(rank, p, idx);
      ++acc.checked;
      if (t.L[idx] < cx.welfare) {
        acc.fail(rank, "lyapunov.lyapunov",
                 {{"price", price_json(p)}, {"L", t.L[idx]}, {"welfare", cx.welfare}});
      }
    }
  }

  const SweepBox box(t, cx.vmax);
  std::vector<std::size_t> argmin;
  Value best = 0;
  bool have = false;
  PriceVector p(static_cast<std::size_t>(t.m));
  std::size_t idx = 0;
  for (std::size_t rank = 0; rank < box.count; ++rank) {
    box.decode(rank, p, idx);
    if (!have || t.L[idx] < best) {
      best = t.L[idx];
      argmin.clear();
      have = true;
    }
    if (t.L[idx] == best) argmin.push_back(idx);
  }
  ++acc.checked;
  if (best != cx.welfare)
    acc.fail(~std::uint64_t{0} - 2, "lyapunov.grid_minimize_lyapunov",
             {{"min_L", best}, {"welfare", cx.welfare}});
  ++acc.checked;
  if (argmin != cx.walrasian_idx) {
    nlohmann::json diff;
    diff["argmin_count"] = argmin.size();
    diff["walrasian_count"] = cx.walrasian_idx.size();
    acc.fail(~std::uint64_t{0} - 1, "equilibrium.walrasian_set", diff);
  }
  return finish("strong-duality", false, std::move(acc));
}

// A run record for the framework suites.
inline nlohmann::json trace_snapshot(const AuctionTrace& trace) {
  nlohmann::json rounds = nlohmann::json::array();
  for (const auto& r : trace.rounds)
    rounds.push_back({{"price", price_json(r.price)}, {"set", set_json(r.chosen)}});
  return {{"policy", trace.policy}, {"seed", trace.seed}, {"rounds", rounds},
          {"final", price_json(trace.final_price)}};
}

inline std::vector<Policy> shipped_policies() {
  return {{PolicyKind::Minimizer, 0}, {PolicyKind::LexFirst, 0}, {PolicyKind::Random, 1},
          {PolicyKind::Random, 2},    {PolicyKind::Random, 3},  {PolicyKind::Largest, 0}};
}

// Every shipped policy, run to completion: ends at the meet of the
// Walrasian set, descends strictly, and keeps the trivial weakly
// under-demanded family invariant at every visited price (two bidders up;
// with one bidder the invariant is void at the zero start price, where the
// single demand contains every item).
inline SuiteResult suite_ascending_runs(const SweepContext& cx, bool premise_ok) {
  const auto& t = cx.tables;
  SuiteAccum acc;
  std::string note;
  const bool check_wud = cx.inst.n() >= 2;
  if (!check_wud) note = "single bidder: trivial-family invariant skipped";
  RunOptions ropts;
  ropts.unchecked = !premise_ok;

  auto in_box = [&](const PriceVector& p) {
    for (Value c : p)
      if (c < 0 || c > t.coord_max) return false;
    return true;
  };

  std::uint64_t rank = 0;
  for (const Policy& pol : shipped_policies()) {
    AuctionTrace trace;
    try {
      trace = run_ascending(cx.inst, pol, ropts);
    } catch (const std::exception& e) {
      ++acc.checked;
      acc.fail(rank, "auction.run_ascending", {{"error", e.what()}});
      rank += 3;
      continue;
    }
    ++acc.checked;
    if (!cx.meet || trace.final_price != *cx.meet) {
      acc.fail(rank, "auction.run_ascending",
               {{"trace", trace_snapshot(trace)},
                {"expected", cx.meet ? price_json(*cx.meet) : nlohmann::json()}});
      ++rank;
      continue;
    }
    for (const auto& round : trace.rounds) {
      ++acc.checked;
      if (round.l_after >= round.l_before)
        acc.fail(rank + 1, "auction.run_ascending",
                 {{"policy", trace.policy}, {"price", price_json(round.price)},
                  {"L_before", round.l_before}, {"L_after", round.l_after}});
    }
    if (check_wud) {
      auto visited = [&](const PriceVector& p) {
        if (!in_box(p)) return;
        const std::size_t idx = t.index(p);
        for (ItemSet s = 1; s < (ItemSet{1} << t.m); ++s) {
          ++acc.checked;
          if (t.hsum(idx, s) <= set_cardinality(s))
            acc.fail(rank + 2, "demand.classify_set",
                     {{"policy", trace.policy}, {"price", price_json(p)},
                      {"weakly_under_demanded", set_json(s)}});
        }
      };
      for (const auto& round : trace.rounds) visited(round.price);
      visited(trace.final_price);
    }
    rank += 3;
  }
  return finish("ascending-runs", false, std::move(acc), std::move(note));
}

inline SuiteResult suite_descending_runs(const SweepContext& cx, bool premise_ok) {
  const auto& t = cx.tables;
  SuiteAccum acc;
  RunOptions ropts;
  ropts.unchecked = !premise_ok;

  std::uint64_t rank = 0;
  for (const Policy& pol : shipped_policies()) {
    AuctionTrace trace;
    try {
      trace = run_descending(cx.inst, pol, ropts);
    } catch (const std::exception& e) {
      ++acc.checked;
      acc.fail(rank, "auction.run_descending", {{"error", e.what()}});
      rank += 3;
      continue;
    }
    ++acc.checked;
    if (!cx.join || trace.final_price != *cx.join) {
      acc.fail(rank, "auction.run_descending",
               {{"trace", trace_snapshot(trace)},
                {"expected", cx.join ? price_json(*cx.join) : nlohmann::json()}});
      ++rank;
      continue;
    }
    for (const auto& round : trace.rounds) {
      ++acc.checked;
      if (round.l_after >= round.l_before)
        acc.fail(rank + 1, "auction.run_descending",
                 {{"policy", trace.policy}, {"price", price_json(round.price)},
                  {"L_before", round.l_before}, {"L_after", round.l_after}});
    }
    auto visited = [&](const PriceVector& p) {
      bool inside = true;
      for (Value c : p) inside = inside && c >= 0 && c <= t.coord_max;
      if (!inside) return;
      const std::size_t idx = t.index(p);
      for (ItemSet s = 1; s < (ItemSet{1} << t.m); ++s) {
        ++acc.checked;
        if (t.lsum(idx, s) >= set_cardinality(s))
          acc.fail(rank + 2, "demand.classify_set",
                   {{"policy", trace.policy}, {"price", price_json(p)},
                    {"weakly_over_demanded", set_json(s)}});
      }
    };
    for (const auto& round : trace.rounds) visited(round.price);
    visited(trace.final_price);
    rank += 3;
  }
  return finish("descending-runs", false, std::move(acc));
}

// The extremal Lyapunov steps always move sets inside the demand classes.
inline SuiteResult suite_minimizer_in_demand_class(const SweepContext& cx) {
  const auto& t = cx.tables;
  const SweepBox box(t, cx.check_max);
  auto acc = sweep_points(box, cx.jobs, [&](std::size_t rank, const PriceVector& p,
                                            std::size_t idx, SuiteAccum& a) {
    const std::size_t bundles = std::size_t{1} << t.m;

    Value best_up = t.L[idx];
    std::vector<ItemSet> argmin_up;
    for (std::size_t s = 1; s < bundles; ++s) {
      const Value L = t.L[idx + t.set_stride[s]];
      if (L < best_up) {
        best_up = L;
        argmin_up.clear();
      }
      if (L == best_up && best_up < t.L[idx]) argmin_up.push_back(static_cast<ItemSet>(s));
    }
    if (!argmin_up.empty()) {
      ItemSet mm = 0;
      for (ItemSet s : argmin_up) {
        bool smaller = false;
        for (ItemSet q : argmin_up)
          if (q != s && is_subset(q, s)) { smaller = true; break; }
        if (!smaller) { mm = s; break; }
      }
      ++a.checked;
      if (!ed_member(t, idx, mm))
        a.fail(rank * 2, "auction.minimal_minimizer",
               {{"price", price_json(p)}, {"set", set_json(mm)}});
    }

    Value best_down = t.L[idx];
    std::vector<ItemSet> argmin_down;
    for (std::size_t s = 1; s < bundles; ++s) {
      if (!covers(p, static_cast<ItemSet>(s))) continue;
      const Value L = t.L[idx - t.set_stride[s]];
      if (L < best_down) {
        best_down = L;
        argmin_down.clear();
      }
      if (L == best_down && best_down < t.L[idx]) argmin_down.push_back(static_cast<ItemSet>(s));
    }
    if (!argmin_down.empty()) {
      ItemSet mm = 0;
      for (ItemSet s : argmin_down) {
        bool smaller = false;
        for (ItemSet q : argmin_down)
          if (q != s && is_subset(q, s)) { smaller = true; break; }
        if (!smaller) { mm = s; break; }
      }
      ++a.checked;
      if (!dd_member(t, idx, p, mm))
        a.fail(rank * 2 + 1, "auction.maximal_minimizer",
               {{"price", price_json(p)}, {"set", set_json(mm)}});
    }
  });
  return finish("minimizer-in-demand-class", false, std::move(acc));
}

// Wherever something is over-demanded an excess-demanded set exists, and
// dually for under-demand; the engines can never stall short of the goal.
inline SuiteResult suite_non_stalling(const SweepContext& cx) {
  const auto& t = cx.tables;
  const SweepBox box(t, cx.check_max);
  auto acc = sweep_points(box, cx.jobs, [&](std::size_t rank, const PriceVector& p,
                                            std::size_t idx, SuiteAccum& a) {
    bool od = false, ed = false, ud = false, dd = false;
    for (ItemSet s = 1; s < (ItemSet{1} << t.m); ++s) {
      const int card = set_cardinality(s);
      if (t.lsum(idx, s) > card) {
        od = true;
        if (!ed) ed = ed_member(t, idx, s);
      }
      if (t.hsum(idx, s) < card) {
        ud = true;
        if (!dd) dd = dd_member(t, idx, p, s);
      }
    }
    ++a.checked;
    if (od && !ed)
      a.fail(rank * 2, "auction.excess_demand_sets", {{"price", price_json(p)}});
    ++a.checked;
    if (ud && !dd)
      a.fail(rank * 2 + 1, "auction.dearth_demand_sets", {{"price", price_json(p)}});
  });
  return finish("non-stalling", false, std::move(acc));
}

// Moving a non-empty set outside the demand class leaves a non-empty
// weakly under-demanded (resp. weakly over-demanded) witness behind. Holds
// for every monotone valuation, substitutes or not.
inline SuiteResult suite_ascent_lower_bound(const SweepContext& cx) {
  const auto& t = cx.tables;
  const SweepBox box(t, cx.check_max);
  auto acc = sweep_points(box, cx.jobs, [&](std::size_t rank, const PriceVector& p,
                                            std::size_t idx, SuiteAccum& a) {
    for (ItemSet s = 1; s < (ItemSet{1} << t.m); ++s) {
      if (ed_member(t, idx, s)) continue;
      ++a.checked;
      const std::size_t up = idx + t.set_stride[s];
      bool witness = false;
      for (ItemSet q = 1; q < (ItemSet{1} << t.m) && !witness; ++q)
        witness = t.hsum(up, q) <= set_cardinality(q);
      if (!witness)
        a.fail(rank << t.m | s, "auction.demonstrate_asc_necessity",
               {{"price", price_json(p)}, {"set", set_json(s)}});
    }
  });
  return finish("ascent-lower-bound", true, std::move(acc));
}

inline SuiteResult suite_descent_lower_bound(const SweepContext& cx) {
  const auto& t = cx.tables;
  const SweepBox box(t, cx.check_max);
  auto acc = sweep_points(box, cx.jobs, [&](std::size_t rank, const PriceVector& p,
                                            std::size_t idx, SuiteAccum& a) {
    for (ItemSet s = 1; s < (ItemSet{1} << t.m); ++s) {
      if (!covers(p, s)) continue;
      if (dd_member(t, idx, p, s)) continue;
      ++a.checked;
      const std::size_t down = idx - t.set_stride[s];
      bool witness = false;
      for (ItemSet q = 1; q < (ItemSet{1} << t.m) && !witness; ++q)
        witness = t.lsum(down, q) >= set_cardinality(q);
      if (!witness)
        a.fail(rank << t.m | s, "auction.demonstrate_desc_necessity",
               {{"price", price_json(p)}, {"set", set_json(s)}});
    }
  });
  return finish("descent-lower-bound", true, std::move(acc));
}

// Facts that hold for any monotone valuation: bounds on l and h, and the
// one-sided difference inequalities.
inline SuiteResult suite_difference_bounds(const SweepContext& cx) {
  const auto& t = cx.tables;
  const SweepBox box(t, cx.check_max);
  auto acc = sweep_points(box, cx.jobs, [&](std::size_t rank, const PriceVector& p,
                                            std::size_t idx, SuiteAccum& a) {
    for (ItemSet s = 1; s < (ItemSet{1} << t.m); ++s) {
      const int card = set_cardinality(s);
      const bool can_lower = covers(p, s);
      for (int i = 0; i < t.n; ++i) {
        ++a.checked;
        const int l = t.l_of(idx, i, s), h = t.h_of(idx, i, s);
        const Value u = t.bidder_utility(idx, i);
        bool ok = 0 <= l && l <= h && h <= card;
        ok = ok && t.bidder_utility(idx + t.set_stride[s], i) >= u - l;
        if (ok && can_lower) ok = t.bidder_utility(idx - t.set_stride[s], i) >= u + h;
        if (!ok)
          a.fail((rank << t.m | s) * 16 + static_cast<std::uint64_t>(i),
                 "demand.requirement",
                 {{"bidder", i}, {"price", price_json(p)}, {"set", set_json(s)},
                  {"l", l}, {"h", h}});
      }
    }
  });
  return finish("difference-bounds", true, std::move(acc));
}

// Flag algebra: strict demand classes sit inside the weak ones and cannot
// overlap each other; summed tables agree with flag definitions.
inline SuiteResult suite_classification_consistency(const SweepContext& cx) {
  const auto& t = cx.tables;
  const SweepBox box(t, cx.check_max);
  auto acc = sweep_points(box, cx.jobs, [&](std::size_t rank, const PriceVector& p,
                                            std::size_t idx, SuiteAccum& a) {
    for (ItemSet s = 0; s < (ItemSet{1} << t.m); ++s) {
      ++a.checked;
      const int card = set_cardinality(s);
      const int l = t.lsum(idx, s), h = t.hsum(idx, s);
      const bool over = l > card, wover = l >= card, under = h < card, wunder = h <= card;
      bool ok = l <= h && (!over || wover) && (!under || wunder) && !(over && under);
      if (s == 0) ok = ok && wover && wunder && !over && !under;
      if (!ok)
        a.fail(rank << t.m | s, "demand.classify_set",
               {{"price", price_json(p)}, {"set", set_json(s)}, {"l", l}, {"h", h}});
    }
  });
  return finish("classification-consistency", true, std::move(acc));
}

// Informational: where the subset quantifier (all T inside S, T = S
// included) differs from the proper-subset reading. Never a failure; the
// count lands in the note.
inline SuiteResult suite_quantifier_comparison(const SweepContext& cx) {
  const auto& t = cx.tables;
  const SweepBox box(t, cx.check_max);
  std::vector<std::uint64_t> counts(std::max(1u, cx.jobs), 0);
  std::vector<std::uint64_t> checked(std::max(1u, cx.jobs), 0);
  const SweepBox& b = box;
  parallel_chunks(b.count, cx.jobs, [&](unsigned w, std::size_t begin, std::size_t end) {
    PriceVector p(static_cast<std::size_t>(t.m));
    std::size_t idx = 0;
    for (std::size_t rank = begin; rank < end; ++rank) {
      b.decode(rank, p, idx);
      for (ItemSet s = 1; s < (ItemSet{1} << t.m); ++s) {
        if (t.lsum(idx, s) <= set_cardinality(s)) continue;
        ++checked[w];
        const std::size_t up = idx + t.set_stride[s];
        bool proper_clean = true;
        for (ItemSet q = (s - 1) & s; q; q = (q - 1) & s)
          if (t.hsum(up, q) <= set_cardinality(q)) { proper_clean = false; break; }
        const bool self_clean = t.hsum(up, s) > set_cardinality(s);
        if (proper_clean && !self_clean) ++counts[w];
      }
    }
  });
  SuiteAccum acc;
  std::uint64_t disagreements = 0;
  for (unsigned w = 0; w < counts.size(); ++w) {
    acc.checked += checked[w];
    disagreements += counts[w];
  }
  return finish("quantifier-comparison", true, std::move(acc),
                "readings disagree on " + std::to_string(disagreements) + " over-demanded sets");
}

}  // namespace detail

inline SweepReport selftest(const Instance& inst, SelftestOptions opts = {}) {
  {
    const auto rep = validate(inst);
    if (!rep.well_formed)
      throw std::invalid_argument("instance fails validation; run validate for witnesses");
  }

  SweepReport report;
  report.digest = detail::fnv_digest(serialize_instance(inst));
  report.m = inst.m;
  report.n = inst.n();
  report.vmax = grid_vmax(inst);
  report.forced = opts.force;

  report.premise_failure = all_gross_substitutes(inst, opts.m_check_cap);
  report.premise_ok = !report.premise_failure;
  {
    SuiteResult premise;
    premise.name = "substitutes-premise";
    premise.premise_free = true;
    premise.checked = static_cast<std::uint64_t>(inst.n());
    if (report.premise_failure) {
      premise.failures = 1;
      const auto& f = *report.premise_failure;
      premise.first = Counterexample{
          "demand.is_gross_substitute",
          {{"bidder", f.bidder}, {"price", detail::price_json(f.witness.price)},
           {"set", detail::set_json(f.witness.set)}, {"lhs", f.witness.lhs},
           {"rhs", f.witness.rhs}}};
    }
    report.suites.push_back(std::move(premise));
  }

  const SweepContext cx = make_sweep_context(inst, opts.jobs);
  const bool run_premised = report.premise_ok || opts.force;

  auto add = [&](SuiteResult r) { report.suites.push_back(std::move(r)); };
  auto add_premised = [&](auto&& fn) {
    if (run_premised) {
      add(fn());
    } else {
      SuiteResult r = fn.name_only();
      r.skipped = true;
      r.note = "skipped: substitutes premise failed";
      add(std::move(r));
    }
  };

  // Premise-dependent suites.
  struct Named {
    const char* name;
    std::function<SuiteResult()> run;
    SuiteResult name_only() const {
      SuiteResult r;
      r.name = name;
      return r;
    }
    SuiteResult operator()() const { return run(); }
  };
  const std::vector<Named> premised = {
      {"ascent-identity", [&] { return detail::suite_ascent_identity(cx); }},
      {"descent-identity", [&] { return detail::suite_descent_identity(cx); }},
      {"difference-identities", [&] { return detail::suite_difference_identities(cx); }},
      {"price-characterization", [&] { return detail::suite_price_characterization(cx); }},
      {"lyapunov-submodularity", [&] { return detail::suite_lyapunov_submodularity(cx); }},
      {"walrasian-lattice", [&] { return detail::suite_walrasian_lattice(cx); }},
      {"requirement-monotonicity", [&] { return detail::suite_requirement_monotonicity(cx); }},
      {"single-improvement", [&] { return detail::suite_single_improvement(cx); }},
      {"strong-duality", [&] { return detail::suite_strong_duality(cx); }},
      {"ascending-runs", [&] { return detail::suite_ascending_runs(cx, report.premise_ok); }},
      {"descending-runs", [&] { return detail::suite_descending_runs(cx, report.premise_ok); }},
      {"minimizer-in-demand-class", [&] { return detail::suite_minimizer_in_demand_class(cx); }},
      {"non-stalling", [&] { return detail::suite_non_stalling(cx); }},
  };
  for (const auto& named : premised) add_premised(named);

  // Premise-free suites always run.
  add(detail::suite_ascent_lower_bound(cx));
  add(detail::suite_descent_lower_bound(cx));
  add(detail::suite_difference_bounds(cx));
  add(detail::suite_classification_consistency(cx));
  add(detail::suite_quantifier_comparison(cx));

  return report;
}

}  // namespace walras
