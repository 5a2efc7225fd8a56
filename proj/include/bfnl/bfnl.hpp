#pragma once

// Umbrella header for the bfnl library: exact and statistical analysis of the
// r-th order nonlinearity of Boolean functions.

#include "bfnl/anf.hpp"
#include "bfnl/binomial_exact.hpp"
#include "bfnl/bounds.hpp"
#include "bfnl/census.hpp"
#include "bfnl/combinatorics.hpp"
#include "bfnl/error.hpp"
#include "bfnl/experiments.hpp"
#include "bfnl/nonlinearity.hpp"
#include "bfnl/rational.hpp"
#include "bfnl/rmcode.hpp"
#include "bfnl/rng.hpp"
#include "bfnl/separated_set.hpp"
#include "bfnl/truth_table.hpp"
#include "bfnl/walsh.hpp"
