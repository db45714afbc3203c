#pragma once

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "walras/instance.hpp"

namespace walras {

enum class KindMix { Additive, UnitDemand, Mixed };

inline const char* mix_name(KindMix k) {
  switch (k) {
    case KindMix::Additive: return "additive";
    case KindMix::UnitDemand: return "unit-demand";
    case KindMix::Mixed: return "mixed";
  }
  return "?";
}

struct GenSpec {
  int m = 2;
  int n = 2;
  Value max_value = 4;
  KindMix mix = KindMix::Mixed;
  std::uint64_t seed = 1;
};

// Deterministic across platforms: raw mt19937_64 output reduced by modulo,
// no distribution objects. Every generated bidder is additive or
// unit-demand, hence gross-substitute by construction.
inline Instance generate_instance(const GenSpec& spec) {
  detail::check_item_count(spec.m);
  if (spec.n < 1 || spec.n > kMaxBidders) throw std::invalid_argument("bidder count out of range");
  if (spec.max_value < 0 || spec.max_value > kMaxValue)
    throw std::invalid_argument("max value out of range");
  std::mt19937_64 gen(spec.seed);
  auto draw = [&](std::uint64_t bound) { return bound ? gen() % bound : 0; };

  std::vector<Valuation> bidders;
  bidders.reserve(static_cast<std::size_t>(spec.n));
  for (int i = 0; i < spec.n; ++i) {
    const bool unit = spec.mix == KindMix::UnitDemand ||
                      (spec.mix == KindMix::Mixed && draw(2) == 1);
    std::vector<Value> items(static_cast<std::size_t>(spec.m));
    for (auto& v : items) v = static_cast<Value>(draw(static_cast<std::uint64_t>(spec.max_value) + 1));
    bidders.push_back(unit ? make_unit_demand(items) : make_additive(items));
  }
  return make_instance(spec.m, std::move(bidders));
}

// The fixed verification corpus: every (m, n, mix) combination with several
// seeds each. Two bidders minimum -- with a single bidder every non-empty
// set is weakly under-demanded at the zero price (the lone demand contains
// all items), so the ascending invariant is degenerate there.
inline std::vector<GenSpec> corpus_specs(int seeds_per_combo = 6) {
  std::vector<GenSpec> specs;
  for (int m = 1; m <= 4; ++m)
    for (int n = 2; n <= 4; ++n)
      for (KindMix mix : {KindMix::Additive, KindMix::UnitDemand, KindMix::Mixed})
        for (int k = 1; k <= seeds_per_combo; ++k) {
          GenSpec s;
          s.m = m;
          s.n = n;
          s.max_value = 4;
          s.mix = mix;
          s.seed = (static_cast<std::uint64_t>(m) << 24) | (static_cast<std::uint64_t>(n) << 16) |
                   (static_cast<std::uint64_t>(mix) << 8) | static_cast<std::uint64_t>(k);
          specs.push_back(s);
        }
  return specs;
}

}  // namespace walras
