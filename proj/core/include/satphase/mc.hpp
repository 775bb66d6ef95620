#pragma once
#include <cstdint>
#include <functional>

#include "satphase/error.hpp"

namespace satphase {

inline constexpr double kWilsonZ = 1.959963984540054;  // 95% two-sided

struct McEstimate {
    int trials = 0;
    int successes = 0;
    double p_hat = 0;
    double ci_lo = 0, ci_hi = 0;  // Wilson 95%
    std::uint64_t seed = 0;
};

// trial(seed) runs one instance; per-trial seeds are counter-derived from
// the master seed, so aggregation is order-independent and a parallel run
// is bit-identical to a serial one.
McEstimate mc_prob(const std::function<bool(std::uint64_t)>& trial,
                   int trials, std::uint64_t seed);

// Stochastic bisection on clause density y = m/n: at each midpoint the
// Wilson interval either brackets 0.5 (done) or decides the side; stops
// on bracketing or when the interval is narrower than tol.
// sat_trial(m, seed) decides one instance with m clauses.
double find_y50(int n, const std::function<bool(int, std::uint64_t)>& sat_trial,
                double y_lo, double y_hi, int trials_per_point, double tol,
                std::uint64_t seed);

}
