#include <catch_amalgamated.hpp>

#include "walras/fixtures.hpp"
#include "walras/io.hpp"

using namespace walras;

TEST_CASE("additive valuations expand to full bundle tables") {
  const Valuation v = make_additive({1, 2, 4});
  REQUIRE(v.kind == ValuationKind::Additive);
  REQUIRE(v.m == 3);
  CHECK(v(0) == 0);
  CHECK(v(0b001) == 1);
  CHECK(v(0b010) == 2);
  CHECK(v(0b011) == 3);
  CHECK(v(0b111) == 7);
}

TEST_CASE("unit-demand valuations take the best single item") {
  const Valuation v = make_unit_demand({2, 1});
  CHECK(v(0) == 0);
  CHECK(v(0b01) == 2);
  CHECK(v(0b10) == 1);
  CHECK(v(0b11) == 2);
}

TEST_CASE("table factory rejects malformed tables") {
  CHECK_THROWS_AS(make_table({0, 1, 1}), std::invalid_argument);       // not a power of two
  CHECK_THROWS_AS(make_table({1, 1, 1, 1}), std::invalid_argument);    // v(empty) != 0
  CHECK_THROWS_AS(make_table({0, 1, 1, 0}), std::invalid_argument);    // not monotone
  CHECK_NOTHROW(make_table({0, 1, 1, 3}));
}

TEST_CASE("monotonicity violations come with a witness") {
  const Valuation v{2, ValuationKind::Table, {0, 1, 1, 0}};
  const auto w = monotonicity_violation(v);
  REQUIRE(w.has_value());
  CHECK(v(w->first) > v(w->second));
  CHECK(is_subset(w->first, w->second));
}

TEST_CASE("validate reports issues instead of throwing") {
  Instance bad;
  bad.m = 2;
  bad.bidders.push_back(Valuation{2, ValuationKind::Table, {1, 1, 1, 1}});
  const auto rep = validate(bad);
  CHECK_FALSE(rep.well_formed);
  CHECK_FALSE(rep.issues.empty());

  const auto good = validate(fixtures::e1());
  CHECK(good.well_formed);
  CHECK(good.issues.empty());
  CHECK(good.vmax == 2);
  CHECK(good.bound == 3);
}

TEST_CASE("grid bound comes from the largest full-bundle value") {
  CHECK(grid_vmax(fixtures::e1()) == 2);
  CHECK(grid_vmax(fixtures::u1()) == 2);
  CHECK(grid_vmax(fixtures::x1()) == 3);
  CHECK(grid_vmax(fixtures::z0()) == 0);
}

TEST_CASE("instance json round-trips through parse and serialize") {
  for (const Instance& inst :
       {fixtures::e1(), fixtures::u1(), fixtures::x1(), fixtures::z0()}) {
    const Instance back = parse_instance(serialize_instance(inst));
    REQUIRE(back.m == inst.m);
    REQUIRE(back.n() == inst.n());
    for (int i = 0; i < inst.n(); ++i) {
      const auto& a = inst.bidders[static_cast<std::size_t>(i)];
      const auto& b = back.bidders[static_cast<std::size_t>(i)];
      CHECK(a.kind == b.kind);
      CHECK(a.values == b.values);
    }
  }
}

TEST_CASE("labels survive the round trip and drive formatting") {
  const std::string doc = R"({
    "m": 2,
    "bidders": [{ "kind": "additive", "values": [1, 1] }],
    "labels": { "items": ["left", "right"], "bidders": ["solo"] }
  })";
  const Instance inst = parse_instance(doc);
  REQUIRE(inst.item_labels.size() == 2);
  CHECK(format_set(0b01, inst.item_labels) == "{left}");
  CHECK(format_set(0b11, inst.item_labels) == "{left,right}");
  const Instance back = parse_instance(serialize_instance(inst));
  CHECK(back.item_labels == inst.item_labels);
  CHECK(back.bidder_labels == inst.bidder_labels);
}

TEST_CASE("parser rejects structurally broken documents") {
  CHECK_THROWS_AS(parse_instance("not json"), ParseError);
  CHECK_THROWS_AS(parse_instance("{}"), ParseError);
  CHECK_THROWS_AS(parse_instance(R"({"m": 0, "bidders": []})"), ParseError);
  CHECK_THROWS_AS(parse_instance(R"({"m": 17, "bidders": [{"kind":"additive","values":[]}]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_instance(R"({"m": 2, "bidders": []})"), ParseError);
  CHECK_THROWS_AS(
      parse_instance(R"({"m": 2, "bidders": [{"kind": "additive", "values": [1]}]})"),
      ParseError);
  CHECK_THROWS_AS(
      parse_instance(R"({"m": 2, "bidders": [{"kind": "additive", "values": [1, -1]}]})"),
      ParseError);
  CHECK_THROWS_AS(
      parse_instance(R"({"m": 2, "bidders": [{"kind": "mystery", "values": [1, 1]}]})"),
      ParseError);
  CHECK_THROWS_AS(
      parse_instance(R"({"m": 2, "bidders": [{"kind": "additive", "values": [1, 1.5]}]})"),
      ParseError);
  CHECK_THROWS_AS(
      parse_instance(
          R"({"m": 2, "bidders": [{"kind": "additive", "values": [1, 1]}], "labels": {"items": ["x"]}})"),
      ParseError);
}

TEST_CASE("set helpers") {
  CHECK(set_cardinality(0b1011) == 3);
  CHECK(full_set(3) == 0b111);
  CHECK(is_subset(0b01, 0b11));
  CHECK_FALSE(is_subset(0b100, 0b011));
  CHECK(format_set(0) == "{}");
  CHECK(format_set(0b11) == "{a,b}");
  CHECK(set_items(0b101) == std::vector<int>{0, 2});
  CHECK(set_from_items({0, 2}) == 0b101);
  CHECK(price_of({2, 3}, 0b11) == 5);
  CHECK(price_covers({1, 0}, 0b01));
  CHECK_FALSE(price_covers({1, 0}, 0b10));
}
