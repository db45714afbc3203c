// Walks a small instance through both auction directions and prints every
// step: demand sets at the start, the chosen set and Lyapunov value per
// round, and the verdict at the final price.

#include <iostream>

#include "walras/walras.hpp"

using namespace walras;

namespace {

void print_trace(const Instance& inst, const AuctionTrace& trace) {
  const bool up = trace.direction == Direction::Ascending;
  std::cout << (up ? "ascending" : "descending") << " auction, policy " << trace.policy << "\n";
  for (std::size_t r = 0; r < trace.rounds.size(); ++r) {
    const auto& round = trace.rounds[r];
    std::cout << "  round " << r << ": at " << format_price(round.price) << " "
              << (up ? "raise " : "lower ") << format_set(round.chosen) << ", L "
              << round.l_before << " -> " << round.l_after << "\n";
  }
  std::cout << "  final price " << format_price(trace.final_price) << " after "
            << trace.rounds.size() << " rounds\n";
}

}  // namespace

int main() {
  // Three items; two additive bidders who like different halves, plus a
  // unit-demand bidder keen on item a. Everything below uses only prices
  // on the integer grid.
  Instance inst = make_instance(3, {
                                        make_additive({2, 1, 0}),
                                        make_additive({0, 1, 2}),
                                        make_unit_demand({3, 0, 0}),
                                    });

  std::cout << "demand at the zero price vector:\n";
  for (int i = 0; i < inst.n(); ++i) {
    std::cout << "  bidder " << i << ":";
    for (ItemSet s : demand_sets(inst.bidders[static_cast<std::size_t>(i)], {0, 0, 0}).sets)
      std::cout << " " << format_set(s);
    std::cout << "\n";
  }

  const auto asc = run_ascending(inst, {PolicyKind::LexFirst, 0});
  print_trace(inst, asc);

  const auto desc = run_descending(inst, {PolicyKind::Minimizer, 0});
  print_trace(inst, desc);

  for (const PriceVector& p : {asc.final_price, desc.final_price}) {
    const auto verdict = characterize(inst, p);
    std::cout << "price " << format_price(p) << ": "
              << (verdict.walrasian ? "walrasian" : "not walrasian")
              << (verdict.minimum ? ", the minimum" : "")
              << (verdict.maximum ? ", the maximum" : "") << "\n";
  }

  const auto alloc = max_welfare(inst);
  std::cout << "welfare " << alloc.welfare << " via";
  for (int i = 0; i < inst.n(); ++i)
    std::cout << " bidder" << i << "="
              << format_set(alloc.bundles[static_cast<std::size_t>(i)]);
  std::cout << "\n";
  return 0;
}
