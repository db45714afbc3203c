#include <catch_amalgamated.hpp>

#include "oracle_helpers.hpp"
#include "walras/demand.hpp"
#include "walras/fixtures.hpp"

using namespace walras;

namespace {
const Valuation& e1_bidder() {
  static const Valuation v = make_additive({1, 1});
  return v;
}
}  // namespace

TEST_CASE("utility is value minus price mass") {
  CHECK(utility(e1_bidder(), {0, 0}, 0b11) == 2);
  CHECK(utility(e1_bidder(), {1, 1}, 0b11) == 0);
  CHECK(utility(make_table({0, 1, 1, 3}), {1, 1}, 0b11) == 1);
  CHECK(utility(e1_bidder(), {3, 0}, 0b01) == -2);
}

TEST_CASE("demand sets enumerate all maximizers in ascending order") {
  auto dem = demand_sets(e1_bidder(), {0, 0});
  CHECK(dem.max_utility == 2);
  CHECK(dem.sets == std::vector<ItemSet>{0b11});

  dem = demand_sets(e1_bidder(), {1, 0});
  CHECK(dem.max_utility == 1);
  CHECK(dem.sets == std::vector<ItemSet>{0b10, 0b11});

  dem = demand_sets(e1_bidder(), {1, 1});
  CHECK(dem.max_utility == 0);
  CHECK(dem.sets == std::vector<ItemSet>{0b00, 0b01, 0b10, 0b11});
}

TEST_CASE("demand agrees with the naive oracle on a grid") {
  for (const Valuation& v :
       {e1_bidder(), make_unit_demand({2, 1}), make_table({0, 1, 1, 3})}) {
    for (Value a = 0; a <= 4; ++a)
      for (Value b = 0; b <= 4; ++b) {
        const PriceVector p{a, b};
        CHECK(demand_sets(v, p).sets == oracle::demand(v, p));
        CHECK(max_utility(v, p) == oracle::utility(v, p, oracle::demand(v, p).front()));
      }
  }
}

TEST_CASE("requirement and redundant bound the demand overlap") {
  CHECK(requirement(e1_bidder(), {0, 0}, 0b01) == 1);
  CHECK(redundant(e1_bidder(), {0, 0}, 0b01) == 1);
  CHECK(requirement(e1_bidder(), {1, 1}, 0b01) == 0);
  CHECK(redundant(e1_bidder(), {1, 1}, 0b01) == 1);
  CHECK(requirement(e1_bidder(), {1, 1}, 0) == 0);
  CHECK(redundant(e1_bidder(), {1, 1}, 0) == 0);
}

TEST_CASE("auction-level sums match the fixture arithmetic") {
  const Instance e1 = fixtures::e1();
  const Instance u1 = fixtures::u1();
  CHECK(auction_requirement(e1, {0, 0}, 0b01) == 3);
  CHECK(auction_redundant(e1, {1, 0}, 0b01) == 3);
  CHECK(auction_redundant(u1, {2, 2}, 0b10) == 0);

  for (Value a = 0; a <= 3; ++a)
    for (Value b = 0; b <= 3; ++b)
      for (ItemSet s = 0; s < 4; ++s) {
        const PriceVector p{a, b};
        CHECK(auction_requirement(e1, p, s) == oracle::lsum(e1, p, s));
        CHECK(auction_redundant(e1, p, s) == oracle::hsum(e1, p, s));
      }
}

TEST_CASE("classification flags follow the threshold definitions") {
  const Instance e1 = fixtures::e1();
  const auto a_at_zero = classify_set(e1, {0, 0}, 0b01);
  CHECK(a_at_zero.over);
  CHECK(a_at_zero.weakly_over);
  CHECK_FALSE(a_at_zero.under);
  CHECK(a_at_zero.l == 3);

  const auto b_at_22 = classify_set(fixtures::u1(), {2, 2}, 0b10);
  CHECK(b_at_22.under);
  CHECK(b_at_22.weakly_under);
  CHECK(b_at_22.h == 0);

  const auto empty = classify_set(e1, {1, 1}, 0);
  CHECK(empty.weakly_over);
  CHECK(empty.weakly_under);
  CHECK_FALSE(empty.over);
  CHECK_FALSE(empty.under);
}

TEST_CASE("class enumeration matches the worked examples") {
  const Instance e1 = fixtures::e1();
  CHECK(enumerate_class(e1, {0, 0}, SetClass::OverDemanded) ==
        std::vector<ItemSet>{0b01, 0b10, 0b11});
  CHECK(enumerate_class(e1, {1, 1}, SetClass::OverDemanded).empty());
  CHECK(enumerate_class(e1, {1, 1}, SetClass::WeaklyUnderDemanded) == std::vector<ItemSet>{0});
}

TEST_CASE("substitutes check passes the constructive kinds") {
  CHECK_FALSE(is_gross_substitute(e1_bidder()).has_value());
  CHECK_FALSE(is_gross_substitute(make_unit_demand({2, 1})).has_value());
  CHECK_FALSE(is_gross_substitute(make_additive({0, 0})).has_value());
}

TEST_CASE("substitutes check pins the complement table with its first witness") {
  const auto w = is_gross_substitute(make_table({0, 1, 1, 3}));
  REQUIRE(w.has_value());
  CHECK(w->price == PriceVector{1, 1});
  CHECK(w->set == 0b11);
  CHECK(w->lhs == 1);
  CHECK(w->rhs == 2);
}

TEST_CASE("substitutes check refuses oversized valuations") {
  std::vector<Value> big(std::size_t{1} << 6, 0);
  for (std::size_t s = 0; s < big.size(); ++s) big[s] = static_cast<Value>(set_cardinality(static_cast<ItemSet>(s)));
  CHECK_THROWS_AS(is_gross_substitute(Valuation{6, ValuationKind::Table, big}, 5),
                  std::invalid_argument);
}

TEST_CASE("dual condition mirrors the primal one") {
  const auto both = dual_gs_check(e1_bidder(), {1, 1}, 0b01);
  CHECK(both.first == 0);
  CHECK(both.second == 0);
  const auto omega = dual_gs_check(e1_bidder(), {1, 1}, 0b11);
  CHECK(omega.first == 0);
  CHECK(omega.second == 0);
  const auto empty = dual_gs_check(e1_bidder(), {1, 1}, 0);
  CHECK(empty.first == empty.second);
  CHECK_THROWS_AS(dual_gs_check(e1_bidder(), {0, 1}, 0b01), std::invalid_argument);
}

TEST_CASE("single improvement finds a one-step better neighbor") {
  CHECK(single_improvement(e1_bidder(), {1, 0}, 0b01) == ItemSet{0b10});
  CHECK(single_improvement(e1_bidder(), {0, 0}, 0b00) == ItemSet{0b01});
  CHECK(single_improvement(make_table({0, 1, 1, 3}), {1, 1}, 0b01) == ItemSet{0b11});
  CHECK_THROWS_AS(single_improvement(e1_bidder(), {0, 0}, 0b11), std::invalid_argument);
}

TEST_CASE("configuration search reports only near-misses for the complement table") {
  const auto search = non_gs_configuration(make_table({0, 1, 1, 3}));
  CHECK_FALSE(search.found.has_value());
  REQUIRE(search.near_miss_count > 0);
  const auto& first = search.near_misses.front();
  CHECK(first.price == PriceVector{1, 2});
  CHECK(first.base == 0);
  CHECK(first.j1 == 0);
  CHECK(first.j2 == 1);
  CHECK_FALSE(first.exact);
}

TEST_CASE("configuration search finds an exact pair when one exists") {
  const auto search = non_gs_configuration(make_table({0, 1, 1, 4}));
  REQUIRE(search.found.has_value());
  CHECK(search.found->price == PriceVector{2, 2});
  CHECK(search.found->base == 0);
  CHECK(search.found->j1 == 0);
  CHECK(search.found->j2 == 1);
  CHECK(search.found->j3 == -1);
  CHECK(search.found->exact);
}

TEST_CASE("configuration search handles the second form on three items") {
  const Valuation v = make_table({0, 1, 1, 3, 2, 2, 2, 3});
  const auto search = non_gs_configuration(v);
  CHECK(search.found.has_value());
  CHECK(is_gross_substitute(v).has_value());
}

TEST_CASE("configuration search stays silent on substitutes valuations") {
  CHECK_FALSE(non_gs_configuration(e1_bidder()).found.has_value());
  CHECK_FALSE(non_gs_configuration(make_additive({0, 0})).found.has_value());
}
