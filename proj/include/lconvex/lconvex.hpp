#pragma once

// Umbrella header for the whole library.

#include "lconvex/budgets.hpp"
#include "lconvex/convex.hpp"
#include "lconvex/errors.hpp"
#include "lconvex/fuzzy.hpp"
#include "lconvex/generate.hpp"
#include "lconvex/io.hpp"
#include "lconvex/lattice.hpp"
#include "lconvex/mutation.hpp"
#include "lconvex/order.hpp"
#include "lconvex/scott.hpp"
#include "lconvex/sober.hpp"
#include "lconvex/theorems.hpp"
