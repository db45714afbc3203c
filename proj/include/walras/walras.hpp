#pragma once

// Umbrella header for the whole library.

#include "walras/sets.hpp"
#include "walras/instance.hpp"
#include "walras/io.hpp"
#include "walras/demand.hpp"
#include "walras/lyapunov.hpp"
#include "walras/equilibrium.hpp"
#include "walras/auction.hpp"
#include "walras/unitdemand.hpp"
#include "walras/grid.hpp"
#include "walras/selftest.hpp"
#include "walras/jsonout.hpp"
#include "walras/fixtures.hpp"
#include "walras/generate.hpp"
