#include "satphase/brw.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "satphase/rng.hpp"

namespace satphase {

namespace {

double branch_mean(const BrwSpec& s, long long u) {
    if (s.branch == BranchLaw::constant) return s.m0;
    double m = s.m0 - s.decay * std::abs(double(u) - s.center);
    return m > 0.0 ? m : 0.0;
}

// Step draws dominate the runtime, so the rounded-Gaussian law is sampled
// from its exact pmf (mass between half-integers) through a Walker alias
// table: one raw 64-bit draw supplies both the bucket (top bits) and the
// accept coin (low 53 bits), disjoint as long as the table stays within
// 2^11 cells. The tail beyond 8.5 sigma carries under 1e-16 of mass and
// is folded in by the normalization.
class StepSampler {
public:
    explicit StepSampler(const BrwSpec& s) {
        if (s.step_law == StepLaw::two_point) {
            jump_ = std::llround(s.step_scale);
            return;
        }
        const double inv = 1.0 / (s.step_scale * std::sqrt(2.0));
        const long long lo = -std::llround(std::ceil(8.5 * s.step_scale));
        const int n = static_cast<int>(-2 * lo + 1);
        int m = 1;
        while (m < n) m <<= 1;
        shift_ = 64 - static_cast<int>(std::countr_zero(unsigned(m)));

        std::vector<double> scaled(m, 0.0);
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            scaled[i] = 0.5 * (std::erf((double(lo + i) + 0.5) * inv) -
                               std::erf((double(lo + i) - 0.5) * inv));
            total += scaled[i];
        }
        self_.resize(m);
        alias_.resize(m);
        prob_.assign(m, 1.0);
        for (int i = 0; i < m; ++i) {
            self_[i] = alias_[i] = (i < n ? lo + i : 0);
            scaled[i] *= m / total;
        }
        std::vector<int> small, large;
        for (int i = 0; i < m; ++i)
            (scaled[i] < 1.0 ? small : large).push_back(i);
        while (!small.empty() && !large.empty()) {
            int a = small.back(), b = large.back();
            small.pop_back();
            prob_[a] = scaled[a];
            alias_[a] = self_[b];
            scaled[b] -= 1.0 - scaled[a];
            if (scaled[b] < 1.0) {
                large.pop_back();
                small.push_back(b);
            }
        }
        // leftovers sit within rounding of exactly one
        for (int i : small) prob_[i] = 1.0;
    }

    long long draw(Rng& rng) const {
        if (prob_.empty()) return rng.bernoulli(0.5) ? jump_ : -jump_;
        const std::uint64_t r = rng.raw();
        const std::uint64_t i = r >> shift_;
        const double f =
            shift_ >= 53
                ? double(r & ((std::uint64_t(1) << 53) - 1)) * 0x1.0p-53
                : rng.uniform01();
        return f < prob_[i] ? self_[i] : alias_[i];
    }

private:
    long long jump_ = 0;
    int shift_ = 0;
    std::vector<double> prob_;
    std::vector<long long> self_, alias_;
};

BrwGeneration summarize(const std::vector<long long>& pos, bool keep) {
    BrwGeneration g;
    g.size = static_cast<long long>(pos.size());
    if (!pos.empty()) {
        long long mn = pos[0], mx = pos[0];
        double sum = 0.0;
        for (long long p : pos) {
            mn = std::min(mn, p);
            mx = std::max(mx, p);
            sum += double(p);
        }
        g.mean = sum / double(pos.size());
        g.min = mn;
        g.max = mx;
    }
    if (keep) g.positions = pos;
    return g;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

BrwRun brw_simulate(const BrwSpec& spec) {
    if (spec.cap < 1000) throw domain_error("brw_simulate: cap < 1000");
    if (spec.generations < 1)
        throw domain_error("brw_simulate: generations < 1");
    if (spec.init < 1) throw domain_error("brw_simulate: init < 1");
    if (!(spec.m0 >= 0.0)) throw domain_error("brw_simulate: m0 < 0");
    if (!(spec.decay >= 0.0)) throw domain_error("brw_simulate: decay < 0");
    if (!(spec.step_scale > 0.0))
        throw domain_error("brw_simulate: step_scale <= 0");

    Rng rng(spec.seed);
    BrwRun run;
    run.spec = spec;

    const StepSampler stepper(spec);
    std::vector<long long> cur(spec.init, 0);
    run.generations.push_back(summarize(cur, spec.record_positions));

    std::vector<long long> next;
    for (int gen = 1; gen <= spec.generations; ++gen) {
        next.clear();
        for (long long u : cur) {
            double mu = branch_mean(spec, u);
            long long kids = static_cast<long long>(std::floor(mu));
            double frac = mu - double(kids);
            if (frac > 0.0 && rng.bernoulli(frac)) ++kids;
            for (long long c = 0; c < kids; ++c)
                next.push_back(u + stepper.draw(rng));
        }
        if (next.empty()) {
            run.extinct = true;
            run.extinct_at = gen;
            break;
        }
        if (static_cast<long long>(next.size()) > spec.cap) {
            // uniform subsample: a partial Fisher-Yates pass has no
            // positional bias, unlike truncating the generation order
            for (long long j = 0; j < spec.cap; ++j) {
                size_t pick = size_t(j) + rng.below(next.size() - j);
                std::swap(next[j], next[pick]);
            }
            next.resize(spec.cap);
        }
        run.generations.push_back(summarize(next, spec.record_positions));
        cur.swap(next);
    }
    run.final_positions = cur;
    return run;
}

double BrwRun::quantile(double alpha) const {
    if (!(alpha >= 0.0) || !(alpha <= 1.0))
        throw domain_error("quantile: alpha outside [0, 1]");
    if (final_positions.empty())
        throw numeric_error("quantile: empty final generation");
    std::vector<long long> s = final_positions;
    std::sort(s.begin(), s.end());
    size_t idx = std::min(s.size() - 1,
                          static_cast<size_t>(alpha * double(s.size())));
    return double(s[idx]);
}

double BrwRun::deviation(double alpha) const {
    return std::abs(quantile(alpha));
}

ExceedanceResult brw_exceedance(const ExceedanceConfig& cfg) {
    if (cfg.runs < 2) throw domain_error("brw_exceedance: runs < 2");
    if (cfg.lambda_factors.empty())
        throw domain_error("brw_exceedance: empty lambda grid");
    if (cfg.min_count < 1)
        throw domain_error("brw_exceedance: min_count < 1");

    BrwSpec cspec = cfg.base;
    cspec.branch = BranchLaw::constant;
    cspec.decay = 0.0;
    BrwSpec tspec = cfg.base;
    tspec.branch = BranchLaw::affine_decay;
    tspec.decay = cfg.twin_decay;

    ExceedanceResult res;
    res.dev_const.reserve(cfg.runs);
    res.dev_twin.reserve(cfg.runs);
    for (int r = 0; r < cfg.runs; ++r) {
        BrwSpec c = cspec;
        c.seed = derive_seed(cfg.base.seed, std::uint64_t(r));
        res.dev_const.push_back(brw_simulate(c).deviation(cfg.alpha));
        BrwSpec t = tspec;
        t.seed = derive_seed(cfg.base.seed, (1ULL << 32) + std::uint64_t(r));
        res.dev_twin.push_back(brw_simulate(t).deviation(cfg.alpha));
    }

    double med = median(res.dev_const);
    if (med <= 0.0) {
        double sum = 0.0;
        for (double d : res.dev_const) sum += d;
        med = sum / cfg.runs;
    }
    if (med <= 0.0)
        throw numeric_error("brw_exceedance: deviations identically zero, "
                            "no usable lambda grid");

    const double R = double(cfg.runs);
    res.twin_within = true;
    for (double fac : cfg.lambda_factors) {
        double lam = med * fac;
        int cc = 0, ct = 0;
        for (double d : res.dev_const) cc += d >= lam;
        for (double d : res.dev_twin) ct += d >= lam;
        double ec = cc / R, et = ct / R;
        res.lambdas.push_back(lam);
        res.e_const.push_back(ec);
        res.se_const.push_back(std::sqrt(ec * (1.0 - ec) / R));
        res.e_twin.push_back(et);
        res.se_twin.push_back(std::sqrt(et * (1.0 - et) / R));
        double band = 2.0 * std::sqrt(ec * (1.0 - ec) / R + et * (1.0 - et) / R);
        if (et > ec + band) res.twin_within = false;
    }

    // OLS of ln E against lambda^2 over the usable grid points
    std::vector<double> xs, ys;
    for (size_t i = 0; i < res.lambdas.size(); ++i) {
        int count = int(std::lround(res.e_const[i] * R));
        if (count < cfg.min_count) continue;
        xs.push_back(res.lambdas[i] * res.lambdas[i]);
        ys.push_back(std::log(res.e_const[i]));
    }
    res.fit_points = int(xs.size());
    if (res.fit_points < 2)
        throw numeric_error("brw_exceedance: fewer than two usable grid "
                            "points for the regression");
    double mx = 0, my = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    double sxx = 0, sxy = 0, sst = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        sst += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0)
        throw numeric_error("brw_exceedance: degenerate lambda grid");
    res.slope = sxy / sxx;
    res.intercept = my - res.slope * mx;
    double ssr = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        double pred = res.intercept + res.slope * xs[i];
        ssr += (ys[i] - pred) * (ys[i] - pred);
    }
    res.r2 = sst == 0.0 ? 1.0 : 1.0 - ssr / sst;
    return res;
}

}  // namespace satphase
