#include <catch_amalgamated.hpp>

#include "oracle_helpers.hpp"
#include "walras/auction.hpp"
#include "walras/fixtures.hpp"
#include "walras/jsonout.hpp"

using namespace walras;

namespace {

const std::vector<Policy> kAllPolicies = {
    {PolicyKind::Minimizer, 0}, {PolicyKind::LexFirst, 0}, {PolicyKind::Largest, 0},
    {PolicyKind::Random, 0},    {PolicyKind::Random, 1},   {PolicyKind::Random, 42},
};

void check_strict_descent(const AuctionTrace& trace) {
  for (std::size_t r = 0; r < trace.rounds.size(); ++r) {
    CAPTURE(r);
    CHECK(trace.rounds[r].l_after < trace.rounds[r].l_before);
    if (r + 1 < trace.rounds.size())
      CHECK(trace.rounds[r].l_after == trace.rounds[r + 1].l_before);
  }
}

}  // namespace

TEST_CASE("excess and dearth demand collections on the fixtures") {
  const Instance e1 = fixtures::e1();
  const Instance u1 = fixtures::u1();

  CHECK(excess_demand_sets(e1, {0, 0}) == std::vector<ItemSet>{1, 2, 3});
  CHECK(excess_demand_sets(e1, {1, 0}) == std::vector<ItemSet>{2});
  CHECK(excess_demand_sets(e1, {1, 1}).empty());
  CHECK(excess_demand_sets(u1, {0, 0}) == std::vector<ItemSet>{1});

  CHECK(dearth_demand_sets(e1, {2, 2}) == std::vector<ItemSet>{1, 2, 3});
  CHECK(dearth_demand_sets(u1, {2, 2}) == std::vector<ItemSet>{2});
  CHECK(dearth_demand_sets(e1, {1, 1}).empty());
  // Nothing is feasible to lower at the zero price.
  CHECK(dearth_demand_sets(e1, {0, 0}).empty());
  CHECK(dearth_demand_sets(u1, {0, 0}).empty());
}

TEST_CASE("steepest-step minimizers match hand computation") {
  const Instance e1 = fixtures::e1();
  const auto up = minimal_minimizer(e1, {0, 0});
  REQUIRE(up.has_value());
  CHECK(up->set == 0b11);
  CHECK(up->improved == 2);
  CHECK(up->unique);
  CHECK_FALSE(minimal_minimizer(e1, {1, 1}).has_value());

  const auto down = maximal_minimizer(fixtures::u1(), {2, 2});
  REQUIRE(down.has_value());
  CHECK(down->set == 0b10);
  CHECK(down->improved == 3);
  CHECK(down->unique);
}

TEST_CASE("ascending traces are exact on the triple-additive fixture") {
  const Instance e1 = fixtures::e1();

  const auto steep = run_ascending(e1, {PolicyKind::Minimizer, 0});
  REQUIRE(steep.rounds.size() == 1);
  CHECK(steep.start_price == PriceVector{0, 0});
  CHECK(steep.rounds[0].price == PriceVector{0, 0});
  CHECK(steep.rounds[0].chosen == 0b11);
  CHECK(steep.rounds[0].l_before == 6);
  CHECK(steep.rounds[0].l_after == 2);
  CHECK(steep.rounds[0].in_demand_class);
  CHECK(steep.final_price == PriceVector{1, 1});
  CHECK(steep.policy == "minimal-minimizer");
  CHECK_FALSE(steep.unchecked);

  const auto lex = run_ascending(e1, {PolicyKind::LexFirst, 0});
  REQUIRE(lex.rounds.size() == 2);
  CHECK(lex.rounds[0].chosen == 0b01);
  CHECK(lex.rounds[1].price == PriceVector{1, 0});
  CHECK(lex.rounds[1].chosen == 0b10);
  CHECK(lex.rounds[1].l_before == 4);
  CHECK(lex.final_price == PriceVector{1, 1});
}

TEST_CASE("descending traces are exact") {
  const auto e1 = run_descending(fixtures::e1(), {PolicyKind::Minimizer, 0});
  REQUIRE(e1.rounds.size() == 1);
  CHECK(e1.start_price == PriceVector{2, 2});
  CHECK(e1.rounds[0].chosen == 0b11);
  CHECK(e1.rounds[0].l_before == 4);
  CHECK(e1.rounds[0].l_after == 2);
  CHECK(e1.final_price == PriceVector{1, 1});

  const auto u1 = run_descending(fixtures::u1(), {PolicyKind::LexFirst, 0});
  REQUIRE(u1.rounds.size() == 1);
  CHECK(u1.start_price == PriceVector{2, 2});
  CHECK(u1.rounds[0].chosen == 0b10);
  CHECK(u1.rounds[0].l_before == 4);
  CHECK(u1.rounds[0].l_after == 3);
  CHECK(u1.final_price == PriceVector{2, 1});
}

TEST_CASE("the degenerate zero instance needs no rounds") {
  for (const Instance& inst : {fixtures::z0(), fixtures::z0_unit_demand()}) {
    const auto up = run_ascending(inst, {PolicyKind::LexFirst, 0});
    const auto down = run_descending(inst, {PolicyKind::LexFirst, 0});
    CHECK(up.rounds.empty());
    CHECK(down.rounds.empty());
    CHECK(up.final_price == PriceVector(static_cast<std::size_t>(inst.m), 0));
    CHECK(down.final_price == up.final_price);
  }
}

TEST_CASE("every policy converges to the extreme walrasian prices") {
  for (const Instance& inst : {fixtures::e1(), fixtures::u1(), fixtures::z0()}) {
    const auto lo = min_walrasian(inst);
    const auto hi = max_walrasian(inst);
    REQUIRE(lo.has_value());
    REQUIRE(hi.has_value());
    for (const Policy& policy : kAllPolicies) {
      CAPTURE(policy_name(policy.kind), policy.seed);
      const auto up = run_ascending(inst, policy);
      CHECK(up.final_price == lo->price);
      check_strict_descent(up);
      for (const auto& r : up.rounds) CHECK(r.in_demand_class);

      const auto down = run_descending(inst, policy);
      CHECK(down.final_price == hi->price);
      check_strict_descent(down);
      for (const auto& r : down.rounds) CHECK(r.in_demand_class);
    }
  }
}

TEST_CASE("identical seeds replay identical random traces") {
  const Instance e1 = fixtures::e1();
  const auto a = run_ascending(e1, {PolicyKind::Random, 9});
  const auto b = run_ascending(e1, {PolicyKind::Random, 9});
  REQUIRE(a.rounds.size() == b.rounds.size());
  for (std::size_t r = 0; r < a.rounds.size(); ++r) {
    CHECK(a.rounds[r].chosen == b.rounds[r].chosen);
    CHECK(a.rounds[r].price == b.rounds[r].price);
  }
}

TEST_CASE("the complement table is refused unless unchecked") {
  const Instance x1 = fixtures::x1();
  CHECK_THROWS_AS(run_ascending(x1, {PolicyKind::LexFirst, 0}), PremiseError);
  CHECK_THROWS_AS(run_descending(x1, {PolicyKind::LexFirst, 0}), PremiseError);
  RunOptions opts;
  opts.unchecked = true;
  CHECK_NOTHROW(run_ascending(x1, {PolicyKind::LexFirst, 0}, opts));
}

TEST_CASE("the engine rejects selections outside the candidate collection") {
  const Selector bad = [](const std::vector<ItemSet>&, const PriceVector&, int) {
    return ItemSet{0};
  };
  CHECK_THROWS_AS(run_ascending(fixtures::e1(), bad), ContractViolation);
}

TEST_CASE("unchecked runs record witnesses for out-of-class selections") {
  // Round 0 raises {a} (excess-demanded); round 1 raises {a,b}, which is
  // over-demanded at (1,0) but not excess-demanded. The run then stalls at
  // (2,1), short of the walrasian price, and the witness explains why.
  const Selector wanders = [](const std::vector<ItemSet>&, const PriceVector&, int round) {
    return round == 0 ? ItemSet{0b01} : ItemSet{0b11};
  };
  RunOptions opts;
  opts.unchecked = true;
  const auto trace = run_ascending(fixtures::e1(), wanders, opts);
  CHECK(trace.unchecked);
  REQUIRE(trace.rounds.size() == 2);
  CHECK(trace.rounds[0].in_demand_class);
  CHECK_FALSE(trace.rounds[1].in_demand_class);
  REQUIRE(trace.rounds[1].culprit.has_value());
  CHECK(*trace.rounds[1].culprit == 0b01);
  CHECK(trace.final_price == PriceVector{2, 1});
  CHECK_FALSE(is_walrasian(fixtures::e1(), trace.final_price).has_value());
}

TEST_CASE("necessity demonstrations produce explicit witnesses") {
  const Instance e1 = fixtures::e1();

  const auto up = demonstrate_asc_necessity(e1, {1, 1}, 0b01);
  REQUIRE(up.has_value());
  CHECK(up->culprit == 0b01);
  CHECK(up->h_or_l == 0);
  CHECK(up->cardinality == 1);

  const auto down = demonstrate_desc_necessity(e1, {1, 1}, 0b11);
  REQUIRE(down.has_value());
  CHECK(down->culprit == 0b01);
  CHECK(down->h_or_l == 3);
  CHECK(down->cardinality == 1);

  CHECK_THROWS_AS(demonstrate_asc_necessity(e1, {0, 0}, 0b01), std::invalid_argument);
  CHECK_THROWS_AS(demonstrate_desc_necessity(fixtures::u1(), {2, 2}, 0b10),
                  std::invalid_argument);
  CHECK_THROWS_AS(demonstrate_desc_necessity(e1, {0, 0}, 0b01), std::invalid_argument);
  CHECK_THROWS_AS(demonstrate_asc_necessity(e1, {0, 0}, 0), std::invalid_argument);
}

TEST_CASE("subset-quantifier readings agree on substitute valuations") {
  for (const Instance& inst : {fixtures::e1(), fixtures::u1()}) {
    for (Value a = 0; a <= 2; ++a)
      for (Value b = 0; b <= 2; ++b)
        CHECK(excess_demand_reading_disagreements(inst, {a, b}).empty());
  }
}

TEST_CASE("trace serialization keeps the pinned schema") {
  const auto trace = run_ascending(fixtures::e1(), {PolicyKind::LexFirst, 0});
  const nlohmann::json j = trace_to_json(trace);
  CHECK(j["direction"] == "ascending");
  CHECK(j["policy"] == "lex-first");
  CHECK(j["seed"] == 0);
  CHECK(j["final_price"] == std::vector<Value>{1, 1});
  REQUIRE(j["rounds"].size() == 2);
  const auto& r0 = j["rounds"][0];
  CHECK(r0["price"] == std::vector<Value>{0, 0});
  CHECK(r0["set"] == std::vector<int>{0});
  CHECK(r0["L_before"] == 6);
  CHECK(r0["L_after"] == 4);
  CHECK_FALSE(r0.contains("in_demand_class"));
  CHECK_FALSE(j.contains("unchecked"));
}
