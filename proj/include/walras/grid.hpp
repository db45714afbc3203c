#pragma once

#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "walras/demand.hpp"

namespace walras {
namespace detail {

// Static chunking over [0, total). Results must be merged with an
// order-independent rule (sums, min-rank counterexample) so the worker
// count never shows in the output.
template <class Fn>
inline void parallel_chunks(std::size_t total, unsigned jobs, Fn&& fn) {
  if (total == 0) return;
  const unsigned workers =
      jobs <= 1 || total < 4096 ? 1u
                                : static_cast<unsigned>(std::min<std::size_t>(jobs, total / 2048));
  if (workers == 1) {
    fn(0u, std::size_t{0}, total);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t step = (total + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(total, w * step);
    const std::size_t end = std::min(total, begin + step);
    if (begin == end) break;
    pool.emplace_back([&fn, w, begin, end] { fn(w, begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace detail

// Every per-price quantity the sweeps need, precomputed over the integer box
// {0..coord_max}^m: indirect utilities, demand collections (as a bitmask
// over bundles, hence the m <= 6 cap), per-bidder and summed requirement /
// redundancy tables, and the Lyapunov value. Point index is lexicographic
// with coordinate 0 most significant, so walking indices 0..points-1 visits
// prices in lexicographic order and idx(p + 1_S) = idx(p) + set_stride[S].
struct GridTables {
  int m = 0;
  int n = 0;
  Value coord_max = 0;
  std::size_t points = 0;
  std::vector<std::size_t> stride;      // per item
  std::vector<std::size_t> set_stride;  // per bundle
  std::vector<Value> L;                 // [points]
  std::vector<Value> util;              // [points * n]
  std::vector<std::uint64_t> dmask;     // [points * n], bit s <=> bundle s demanded
  std::vector<std::uint8_t> l_bid;      // [(points * n) << m]
  std::vector<std::uint8_t> h_bid;
  std::vector<std::uint16_t> l_sum;     // [points << m]
  std::vector<std::uint16_t> h_sum;

  std::size_t index(const PriceVector& p) const {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < p.size(); ++j)
      idx += static_cast<std::size_t>(p[j]) * stride[j];
    return idx;
  }

  PriceVector price_at(std::size_t idx) const {
    PriceVector p(static_cast<std::size_t>(m));
    for (std::size_t j = 0; j < p.size(); ++j) {
      p[j] = static_cast<Value>(idx / stride[j]);
      idx %= stride[j];
    }
    return p;
  }

  Value bidder_utility(std::size_t idx, int i) const {
    return util[idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)];
  }

  std::uint64_t demand_mask(std::size_t idx, int i) const {
    return dmask[idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)];
  }

  int l_of(std::size_t idx, int i, ItemSet s) const {
    return l_bid[((idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)) << m) | s];
  }

  int h_of(std::size_t idx, int i, ItemSet s) const {
    return h_bid[((idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)) << m) | s];
  }

  int lsum(std::size_t idx, ItemSet s) const { return l_sum[(idx << m) | s]; }
  int hsum(std::size_t idx, ItemSet s) const { return h_sum[(idx << m) | s]; }
};

constexpr std::size_t kMaxGridPoints = 5'000'000;
constexpr int kMaxSweepItems = 6;  // demand collections live in a 64-bit mask

inline GridTables build_grid_tables(const Instance& inst, Value coord_max, unsigned jobs = 1) {
  if (inst.m > kMaxSweepItems)
    throw std::invalid_argument("grid sweeps are capped at m <= " + std::to_string(kMaxSweepItems));
  GridTables t;
  t.m = inst.m;
  t.n = inst.n();
  t.coord_max = coord_max;
  const std::size_t per_coord = static_cast<std::size_t>(coord_max) + 1;
  std::size_t points = 1;
  for (int j = 0; j < inst.m; ++j) {
    if (points > kMaxGridPoints / per_coord + 1)
      throw std::invalid_argument("grid too large; lower the values or the item count");
    points *= per_coord;
  }
  if (points > kMaxGridPoints)
    throw std::invalid_argument("grid too large; lower the values or the item count");
  t.points = points;

  t.stride.assign(static_cast<std::size_t>(inst.m), 1);
  for (int j = inst.m - 2; j >= 0; --j)
    t.stride[static_cast<std::size_t>(j)] = t.stride[static_cast<std::size_t>(j) + 1] * per_coord;
  const std::size_t bundles = std::size_t{1} << inst.m;
  t.set_stride.assign(bundles, 0);
  for (ItemSet s = 1; s < bundles; ++s) {
    const ItemSet low = s & (~s + 1);
    t.set_stride[s] = t.set_stride[s & (s - 1)] + t.stride[static_cast<std::size_t>(std::countr_zero(low))];
  }

  const std::size_t nn = static_cast<std::size_t>(t.n);
  t.L.assign(points, 0);
  t.util.assign(points * nn, 0);
  t.dmask.assign(points * nn, 0);
  t.l_bid.assign((points * nn) << inst.m, 0);
  t.h_bid.assign((points * nn) << inst.m, 0);
  t.l_sum.assign(points << inst.m, 0);
  t.h_sum.assign(points << inst.m, 0);

  detail::parallel_chunks(points, jobs, [&](unsigned, std::size_t begin, std::size_t end) {
    std::vector<Value> mass;
    PriceVector p(static_cast<std::size_t>(t.m));
    for (std::size_t idx = begin; idx < end; ++idx) {
      std::size_t rest = idx;
      Value pmass = 0;
      for (std::size_t j = 0; j < p.size(); ++j) {
        p[j] = static_cast<Value>(rest / t.stride[j]);
        rest %= t.stride[j];
        pmass += p[j];
      }
      detail::subset_price_sums(p, t.m, mass);
      Value lsum = pmass;
      for (int i = 0; i < t.n; ++i) {
        const auto& values = inst.bidders[static_cast<std::size_t>(i)].values;
        Value best = 0;
        for (std::size_t s = 0; s < bundles; ++s) {
          const Value u = values[s] - mass[s];
          if (u > best) best = u;
        }
        std::uint64_t mask = 0;
        for (std::size_t s = 0; s < bundles; ++s)
          if (values[s] - mass[s] == best) mask |= std::uint64_t{1} << s;
        t.util[idx * nn + static_cast<std::size_t>(i)] = best;
        t.dmask[idx * nn + static_cast<std::size_t>(i)] = mask;
        lsum += best;

        const std::size_t base = (idx * nn + static_cast<std::size_t>(i)) << t.m;
        for (std::size_t s = 1; s < bundles; ++s) {
          int lo = t.m + 1, hi = 0;
          for (std::uint64_t rem = mask; rem;) {
            const int d = std::countr_zero(rem);
            rem &= rem - 1;
            const int c = set_cardinality(static_cast<ItemSet>(s) & static_cast<ItemSet>(d));
            if (c < lo) lo = c;
            if (c > hi) hi = c;
          }
          t.l_bid[base | s] = static_cast<std::uint8_t>(lo);
          t.h_bid[base | s] = static_cast<std::uint8_t>(hi);
          t.l_sum[(idx << t.m) | s] = static_cast<std::uint16_t>(t.l_sum[(idx << t.m) | s] + lo);
          t.h_sum[(idx << t.m) | s] = static_cast<std::uint16_t>(t.h_sum[(idx << t.m) | s] + hi);
        }
      }
      t.L[idx] = lsum;
    }
  });
  return t;
}

// Partition existence: can the full item set be split into one demanded
// bundle per bidder? Tracks the reachable sets of already-used items as a
// bitmask over bundles. Decides exactly what the assignment-order
// certificate search decides, just without producing the certificate.
inline bool partition_exists(const GridTables& t, std::size_t idx) {
  std::uint64_t reach = 1;  // only the empty set used so far
  for (int i = 0; i < t.n; ++i) {
    const std::uint64_t options = t.demand_mask(idx, i);
    std::uint64_t next = 0;
    for (std::uint64_t rem = reach; rem;) {
      const int used = std::countr_zero(rem);
      rem &= rem - 1;
      for (std::uint64_t opts = options; opts;) {
        const int d = std::countr_zero(opts);
        opts &= opts - 1;
        if ((used & d) == 0) next |= std::uint64_t{1} << (used | d);
      }
    }
    if (!next) return false;
    reach = next;
  }
  return (reach >> ((std::uint64_t{1} << t.m) - 1)) & 1;
}

}  // namespace walras
