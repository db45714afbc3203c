#pragma once

#include "walras/instance.hpp"

namespace walras {
namespace fixtures {

// Three identical additive bidders over two items worth 1 each. The
// workhorse: unique Walrasian price (1,1), three excess-demanded sets at the
// origin but a single minimal minimizer.
inline Instance e1() {
  return make_instance(2, {make_additive({1, 1}), make_additive({1, 1}), make_additive({1, 1})});
}

// Two identical unit-demand bidders, item values (2,1). Walrasian prices
// form the chain (1,0) <= (2,1).
inline Instance u1() {
  return make_instance(2, {make_unit_demand({2, 1}), make_unit_demand({2, 1})});
}

// Single bidder with the complement table (0,1,1,3): monotone, normalized,
// not gross-substitute (supermodular on two items).
inline Instance x1() {
  return make_instance(2, {make_table({0, 1, 1, 3})});
}

// Single bidder indifferent to everything.
inline Instance z0() {
  return make_instance(2, {make_additive({0, 0})});
}

inline Instance z0_unit_demand() {
  return make_instance(2, {make_unit_demand({0, 0})});
}

}  // namespace fixtures
}  // namespace walras
