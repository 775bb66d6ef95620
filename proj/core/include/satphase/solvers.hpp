#pragma once
#include <optional>

#include "satphase/instances.hpp"

namespace satphase {

// Complete search with unit propagation; frozen_count fixes x_1..x_i true.
bool dpll_sat(const CnfFormula& f, int frozen_count = 0);

// Implication-graph SCC decision; width must be <= 2 everywhere.
bool two_sat_solve(const CnfFormula& f);

// Complete backtracking K-colorability.
bool col_solve(const GraphInstance& g, int colors);

// Exhaustive enumeration (n <= 24). u_hat = frozen variables / (2n) over
// all satisfying assignments with the prefix fixed; nullopt if none.
std::optional<double> measure_frozen(const CnfFormula& f, int frozen_count = 0);

}
