#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "satphase/instances.hpp"
#include "satphase/mc.hpp"
#include "satphase/rng.hpp"
#include "satphase/solvers.hpp"

using namespace satphase;

TEST_CASE("wilson interval endpoints") {
    auto never = [](std::uint64_t) { return false; };
    auto always = [](std::uint64_t) { return true; };

    auto lo = mc_prob(never, 200, 1);
    CHECK(lo.successes == 0);
    CHECK(lo.p_hat == 0.0);
    CHECK(std::abs(lo.ci_lo) < 1e-15);
    CHECK(lo.ci_hi > 0.0);
    CHECK(lo.ci_hi < 0.05);

    auto hi = mc_prob(always, 200, 1);
    CHECK(hi.successes == 200);
    CHECK(hi.p_hat == 1.0);
    CHECK(std::abs(hi.ci_hi - 1.0) < 1e-15);
    CHECK(hi.ci_lo < 1.0);
    CHECK(hi.ci_lo > 0.95);

    auto mixed = mc_prob([](std::uint64_t s) { return s % 2 == 0; }, 100, 2);
    CHECK(mixed.ci_lo > 0.0);
    CHECK(mixed.ci_lo < mixed.p_hat);
    CHECK(mixed.p_hat < mixed.ci_hi);
    CHECK(mixed.ci_hi < 1.0);
}

TEST_CASE("mc_prob trial seeds are counter-derived") {
    std::vector<std::uint64_t> seen;
    auto trial = [&](std::uint64_t s) {
        seen.push_back(s);
        return true;
    };
    auto est = mc_prob(trial, 5, 777);
    CHECK(est.seed == 777);
    REQUIRE(seen.size() == 5);
    for (int t = 0; t < 5; ++t) CHECK(seen[t] == derive_seed(777, t));

    auto sat = [](std::uint64_t s) {
        return dpll_sat(gen_ksat(12, 51, 3, s));
    };
    auto a = mc_prob(sat, 50, 31);
    auto b = mc_prob(sat, 50, 31);
    CHECK(a.successes == b.successes);
    CHECK(a.p_hat == b.p_hat);
    CHECK(a.ci_lo == b.ci_lo);
    CHECK(a.ci_hi == b.ci_hi);

    CHECK_THROWS_AS(mc_prob(trial, 0, 1), domain_error);
}

TEST_CASE("mc_prob is invariant under variable relabeling") {
    std::vector<int> perm(21);
    std::iota(perm.begin(), perm.end(), 0);
    Rng pr(991);
    for (int i = 20; i > 1; --i)
        std::swap(perm[i], perm[1 + pr.below(i)]);

    auto plain = [](std::uint64_t s) {
        return dpll_sat(gen_ksat(20, 86, 3, s));
    };
    auto relabeled = [&](std::uint64_t s) {
        auto f = gen_ksat(20, 86, 3, s);
        for (auto& cl : f.clauses)
            for (int& lit : cl)
                lit = lit > 0 ? perm[lit] : -perm[-lit];
        return dpll_sat(f);
    };
    auto a = mc_prob(plain, 60, 445);
    auto b = mc_prob(relabeled, 60, 445);
    CHECK(a.successes == b.successes);
}

TEST_CASE("find_y50 rejects intervals that do not bracket") {
    auto never = [](int, std::uint64_t) { return false; };
    auto always = [](int, std::uint64_t) { return true; };
    CHECK_THROWS_AS(find_y50(100, never, 0.8, 2.0, 50, 0.02, 1), numeric_error);
    CHECK_THROWS_AS(find_y50(100, always, 0.8, 2.0, 50, 0.02, 1), numeric_error);

    CHECK_THROWS_AS(find_y50(0, always, 0.8, 2.0, 50, 0.02, 1), domain_error);
    CHECK_THROWS_AS(find_y50(100, always, 2.0, 0.8, 50, 0.02, 1), domain_error);
    CHECK_THROWS_AS(find_y50(100, always, 0.8, 2.0, 0, 0.02, 1), domain_error);
    CHECK_THROWS_AS(find_y50(100, always, 0.8, 2.0, 50, 0.0, 1), domain_error);
}

TEST_CASE("find_y50 bisects a sharp threshold") {
    // deterministic step at m = 120, i.e. y = 1.205 for n = 100
    auto step = [](int m, std::uint64_t) { return m <= 120; };
    double y = find_y50(100, step, 0.8, 2.0, 50, 0.02, 3);
    CHECK(std::abs(y - 1.205) < 0.011);
}

TEST_CASE("find_y50 on random 2-SAT") {
    auto sat = [](int m, std::uint64_t s) {
        return two_sat_solve(gen_ksat(100, m, 2, s));
    };
    double y = find_y50(100, sat, 0.8, 2.0, 2000, 0.02, 20260817ULL);
    CHECK(y == doctest::Approx(1.381250).epsilon(1e-9));
}
