#include "satphase/mc.hpp"

#include <cmath>

#include "satphase/rng.hpp"

namespace satphase {

namespace {

McEstimate wilson_estimate(int successes, int trials, std::uint64_t seed) {
    McEstimate e;
    e.trials = trials;
    e.successes = successes;
    e.seed = seed;
    e.p_hat = double(successes) / trials;
    const double z2 = kWilsonZ * kWilsonZ;
    const double denom = 1.0 + z2 / trials;
    const double center = (e.p_hat + z2 / (2.0 * trials)) / denom;
    const double half =
        kWilsonZ *
        std::sqrt(e.p_hat * (1.0 - e.p_hat) / trials +
                  z2 / (4.0 * double(trials) * trials)) /
        denom;
    e.ci_lo = center - half;
    e.ci_hi = center + half;
    return e;
}

}  // namespace

McEstimate mc_prob(const std::function<bool(std::uint64_t)>& trial, int trials,
                   std::uint64_t seed) {
    if (trials < 1) throw domain_error("mc_prob: trials < 1");
    int successes = 0;
    for (int t = 0; t < trials; ++t)
        if (trial(derive_seed(seed, t))) ++successes;
    return wilson_estimate(successes, trials, seed);
}

double find_y50(int n, const std::function<bool(int, std::uint64_t)>& sat_trial,
                double y_lo, double y_hi, int trials_per_point, double tol,
                std::uint64_t seed) {
    if (n < 1) throw domain_error("find_y50: n < 1");
    if (!(y_lo >= 0.0) || !(y_hi > y_lo))
        throw domain_error("find_y50: bad interval");
    if (trials_per_point < 1)
        throw domain_error("find_y50: trials_per_point < 1");
    if (!(tol > 0.0)) throw domain_error("find_y50: tol <= 0");

    std::uint64_t point = 0;
    auto estimate = [&](double y) {
        int m = static_cast<int>(std::llround(y * n));
        std::uint64_t point_seed = derive_seed(seed, point++);
        return mc_prob(
            [&](std::uint64_t s) { return sat_trial(m, s); },
            trials_per_point, point_seed);
    };

    McEstimate at_lo = estimate(y_lo);
    McEstimate at_hi = estimate(y_hi);
    if (at_lo.ci_hi < 0.5 || at_hi.ci_lo > 0.5)
        throw numeric_error("find_y50: initial interval does not bracket 0.5");

    double lo = y_lo, hi = y_hi;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        McEstimate est = estimate(mid);
        if (est.ci_lo <= 0.5 && 0.5 <= est.ci_hi) return mid;
        if (est.ci_lo > 0.5)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace satphase
