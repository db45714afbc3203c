#include <catch_amalgamated.hpp>

#include "oracle_helpers.hpp"
#include "walras/equilibrium.hpp"
#include "walras/fixtures.hpp"

using namespace walras;

TEST_CASE("welfare maximization is exact on the fixtures") {
  CHECK(max_welfare(fixtures::e1()).welfare == 2);
  CHECK(max_welfare(fixtures::u1()).welfare == 3);
  CHECK(max_welfare(fixtures::z0()).welfare == 0);
  CHECK(max_welfare(fixtures::x1()).welfare == 3);

  const auto u1 = max_welfare(fixtures::u1());
  CHECK(u1.bundles == std::vector<ItemSet>{0b01, 0b10});
}

TEST_CASE("welfare agrees with the naive oracle") {
  for (const Instance& inst :
       {fixtures::e1(), fixtures::u1(), fixtures::x1(), fixtures::z0()})
    CHECK(max_welfare(inst).welfare == oracle::welfare(inst));
}

TEST_CASE("walrasian verification returns the first certificate") {
  const Instance e1 = fixtures::e1();
  const auto cert = is_walrasian(e1, {1, 1});
  REQUIRE(cert.has_value());
  CHECK(cert->bundles == std::vector<ItemSet>{0b11, 0, 0});
  CHECK_FALSE(is_walrasian(e1, {0, 0}).has_value());

  const auto u1 = is_walrasian(fixtures::u1(), {1, 0});
  REQUIRE(u1.has_value());
  CHECK(u1->bundles == std::vector<ItemSet>{0b01, 0b10});
}

TEST_CASE("every certificate achieves optimal welfare") {
  for (const Instance& inst : {fixtures::e1(), fixtures::u1(), fixtures::z0()}) {
    const Value best = max_welfare(inst).welfare;
    for (const PriceVector& p : walrasian_set(inst)) {
      const auto cert = is_walrasian(inst, p);
      REQUIRE(cert.has_value());
      Value total = 0;
      for (int i = 0; i < inst.n(); ++i)
        total += inst.bidders[static_cast<std::size_t>(i)](cert->bundles[static_cast<std::size_t>(i)]);
      CHECK(total == best);
    }
  }
}

TEST_CASE("walrasian sets match the oracle scan") {
  CHECK(walrasian_set(fixtures::e1()) == std::vector<PriceVector>{{1, 1}});
  CHECK(walrasian_set(fixtures::u1()) == std::vector<PriceVector>{{1, 0}, {2, 1}});
  CHECK(walrasian_set(fixtures::z0()) == std::vector<PriceVector>{{0, 0}});
  for (const Instance& inst : {fixtures::e1(), fixtures::u1(), fixtures::x1()})
    CHECK(walrasian_set(inst) == oracle::walrasian_set(inst));
}

TEST_CASE("extreme prices are the meet and join, verified walrasian") {
  const auto e1_min = min_walrasian(fixtures::e1());
  const auto e1_max = max_walrasian(fixtures::e1());
  REQUIRE(e1_min.has_value());
  REQUIRE(e1_max.has_value());
  CHECK(e1_min->price == PriceVector{1, 1});
  CHECK(e1_max->price == PriceVector{1, 1});
  CHECK(e1_min->walrasian);

  const auto u1_min = min_walrasian(fixtures::u1());
  const auto u1_max = max_walrasian(fixtures::u1());
  REQUIRE(u1_min.has_value());
  REQUIRE(u1_max.has_value());
  CHECK(u1_min->price == PriceVector{1, 0});
  CHECK(u1_max->price == PriceVector{2, 1});
  CHECK(u1_min->walrasian);
  CHECK(u1_max->walrasian);
}

TEST_CASE("characterization matches the worked examples") {
  const Instance e1 = fixtures::e1();
  const auto at_walras = characterize(e1, {1, 1});
  CHECK(at_walras.walrasian);
  CHECK(at_walras.minimum);
  CHECK(at_walras.maximum);

  const auto at_zero = characterize(e1, {0, 0});
  CHECK_FALSE(at_zero.walrasian);
  REQUIRE(at_zero.walras_evidence.has_value());
  CHECK(at_zero.walras_evidence->set == 0b01);
  CHECK(at_zero.walras_evidence->over);

  const Instance u1 = fixtures::u1();
  const auto u1_min = characterize(u1, {1, 0});
  CHECK(u1_min.walrasian);
  CHECK(u1_min.minimum);
  CHECK_FALSE(u1_min.maximum);
  const auto u1_max = characterize(u1, {2, 1});
  CHECK(u1_max.walrasian);
  CHECK_FALSE(u1_max.minimum);
  CHECK(u1_max.maximum);
  const auto u1_mid = characterize(u1, {1, 1});
  CHECK_FALSE(u1_mid.walrasian);
}

TEST_CASE("characterization agrees with the allocation oracle on full grids") {
  for (const Instance& inst : {fixtures::e1(), fixtures::u1(), fixtures::z0()}) {
    const Value vmax = grid_vmax(inst);
    for (Value a = 0; a <= vmax + 1; ++a)
      for (Value b = 0; b <= vmax + 1; ++b) {
        const PriceVector p{a, b};
        CHECK(characterize(inst, p).walrasian == oracle::walrasian(inst, p));
      }
  }
}

TEST_CASE("characterize refuses the complement table without force") {
  const Instance x1 = fixtures::x1();
  CHECK_THROWS_AS(characterize(x1, {1, 1}), PremiseError);
  CHECK_NOTHROW(characterize(x1, {1, 1}, false));
}

TEST_CASE("lattice check accepts walrasian pairs and rejects others") {
  const Instance u1 = fixtures::u1();
  CHECK(lattice_check(u1, {1, 0}, {2, 1}));
  CHECK(lattice_check(fixtures::e1(), {1, 1}, {1, 1}));
  CHECK_THROWS_AS(lattice_check(u1, {2, 0}, {1, 1}), std::invalid_argument);
}
