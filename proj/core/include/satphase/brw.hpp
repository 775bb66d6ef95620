#pragma once
#include <cstdint>
#include <vector>

#include "satphase/error.hpp"

namespace satphase {

// Branching random walk <m(u), p(x)>: particle at integer position u
// spawns offspring with mean m(u) (floor plus Bernoulli remainder), each
// displaced by an independent draw from the symmetric step law p. The
// population is capped by uniform subsampling. Q_n(alpha) is the
// alpha-quantile of the generation-n positions.

enum class StepLaw { two_point, discrete_gaussian };
enum class BranchLaw { constant, affine_decay };

struct BrwSpec {
    BranchLaw branch = BranchLaw::constant;
    double m0 = 2.0;
    double decay = 0.0;       // affine: m(u) = max(0, m0 - decay |u - center|)
    double center = 0.0;      // the mean path n*a; a = E[step] = 0 here
    StepLaw step_law = StepLaw::two_point;
    double step_scale = 1.0;  // two-point: +-round(scale); gaussian: sigma
    int generations = 100;
    long long cap = 100000;
    long long init = 1;
    std::uint64_t seed = 0;
    bool record_positions = false;
};

struct BrwGeneration {
    long long size = 0;
    double mean = 0;
    long long min = 0, max = 0;
    std::vector<long long> positions;  // filled only when record_positions
};

struct BrwRun {
    BrwSpec spec;
    std::vector<BrwGeneration> generations;  // [0] = initial population
    std::vector<long long> final_positions;
    bool extinct = false;
    int extinct_at = -1;

    double quantile(double alpha) const;  // over the final generation
    double deviation(double alpha = 0.5) const;  // |Q_n(alpha) - n*a|
};

BrwRun brw_simulate(const BrwSpec& spec);

// Paired concentration experiment: R independent runs of the constant-
// branching spec and of its position-suppressed twin; per-run deviations
// D = |Q_n(1/2) - n*a|, exceedance E(lambda) = P(D >= lambda) on a grid
// scaled by median(D), and the OLS of ln E against lambda^2.
struct ExceedanceConfig {
    BrwSpec base;              // branch law forced to constant
    double twin_decay = 0.005;
    int runs = 200;
    double alpha = 0.5;
    std::vector<double> lambda_factors = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
    int min_count = 3;         // grid points with fewer exceedances are
                               // dropped from the regression
};

struct ExceedanceResult {
    std::vector<double> lambdas;
    std::vector<double> e_const, se_const;
    std::vector<double> e_twin, se_twin;
    double slope = 0, intercept = 0, r2 = 0;
    int fit_points = 0;
    bool twin_within = false;  // e_twin <= e_const + 2 SE(diff) at every lambda
    std::vector<double> dev_const, dev_twin;
};

ExceedanceResult brw_exceedance(const ExceedanceConfig& cfg);

}
