#include <catch_amalgamated.hpp>

#include "oracle_helpers.hpp"
#include "walras/fixtures.hpp"
#include "walras/lyapunov.hpp"

using namespace walras;

TEST_CASE("potential value decomposes into utilities plus price mass") {
  const Instance e1 = fixtures::e1();
  const auto at_zero = lyapunov(e1, {0, 0});
  CHECK(at_zero.value == 6);
  CHECK(at_zero.bidder_utilities == std::vector<Value>{2, 2, 2});
  CHECK(at_zero.price_mass == 0);

  const auto at_one = lyapunov(e1, {1, 1});
  CHECK(at_one.value == 2);
  CHECK(at_one.bidder_utilities == std::vector<Value>{0, 0, 0});
  CHECK(at_one.price_mass == 2);

  CHECK(lyapunov_value(fixtures::z0(), {0, 0}) == 0);
}

TEST_CASE("potential matches the naive oracle across the grid") {
  for (const Instance& inst : {fixtures::e1(), fixtures::u1(), fixtures::x1()}) {
    for (Value a = 0; a <= 4; ++a)
      for (Value b = 0; b <= 4; ++b)
        CHECK(lyapunov_value(inst, {a, b}) == oracle::lyapunov(inst, {a, b}));
  }
}

TEST_CASE("difference identities hold on the additive fixture") {
  const Instance e1 = fixtures::e1();
  const auto up_a = delta_up(e1, {0, 0}, 0b01);
  CHECK(up_a.predicted == 4);
  CHECK(up_a.actual == 4);
  const auto up_ab = delta_up(e1, {0, 0}, 0b11);
  CHECK(up_ab.predicted == 2);
  CHECK(up_ab.actual == 2);
  const auto up_empty = delta_up(e1, {1, 0}, 0);
  CHECK(up_empty.predicted == up_empty.actual);

  for (Value a = 0; a <= 3; ++a)
    for (Value b = 0; b <= 3; ++b)
      for (ItemSet s = 0; s < 4; ++s) {
        const PriceVector p{a, b};
        const auto up = delta_up(e1, p, s);
        CHECK(up.predicted == up.actual);
        if (price_covers(p, s)) {
          const auto down = delta_down(e1, p, s);
          CHECK(down.predicted == down.actual);
        }
      }
}

TEST_CASE("delta down requires coverage") {
  CHECK_THROWS_AS(delta_down(fixtures::e1(), {0, 1}, 0b01), std::invalid_argument);
}

TEST_CASE("the complement table breaks an identity somewhere on the grid") {
  const Instance x1 = fixtures::x1();
  bool broken = false;
  for (Value a = 0; a <= 4 && !broken; ++a)
    for (Value b = 0; b <= 4 && !broken; ++b)
      for (ItemSet s = 1; s < 4 && !broken; ++s) {
        const auto up = delta_up(x1, {a, b}, s);
        broken = up.predicted != up.actual;
      }
  CHECK(broken);
}

TEST_CASE("submodularity holds for substitutes and fails for the complement table") {
  const Instance e1 = fixtures::e1();
  const auto sub = submodularity_check(e1, {2, 0}, {0, 2});
  CHECK(sub.lhs == 10);
  CHECK(sub.rhs == 10);
  CHECK(sub.holds);

  const auto same = submodularity_check(e1, {1, 1}, {1, 1});
  CHECK(same.lhs == same.rhs);
  CHECK(same.holds);

  const auto bad = submodularity_check(fixtures::x1(), {2, 1}, {1, 2});
  CHECK(bad.lhs == 7);
  CHECK(bad.rhs == 6);
  CHECK_FALSE(bad.holds);
}

TEST_CASE("grid minimization returns every argmin in lexicographic order") {
  const auto e1 = grid_minimize_lyapunov(fixtures::e1());
  CHECK(e1.min_value == 2);
  CHECK(e1.minimizers == std::vector<PriceVector>{{1, 1}});

  const auto u1 = grid_minimize_lyapunov(fixtures::u1());
  CHECK(u1.min_value == 3);
  CHECK(u1.minimizers == std::vector<PriceVector>{{1, 0}, {2, 1}});

  const auto z0 = grid_minimize_lyapunov(fixtures::z0());
  CHECK(z0.min_value == 0);
  CHECK(z0.minimizers == std::vector<PriceVector>{{0, 0}});
}

TEST_CASE("weak duality: the potential never goes below optimal welfare") {
  for (const Instance& inst : {fixtures::e1(), fixtures::u1(), fixtures::x1()}) {
    const Value w = oracle::welfare(inst);
    for (Value a = 0; a <= 4; ++a)
      for (Value b = 0; b <= 4; ++b)
        CHECK(lyapunov_value(inst, {a, b}) >= w);
  }
}
