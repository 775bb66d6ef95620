// Acceptance suite: one line per criterion, nonzero exit on any failure.
// argv[1] (optional) is the path to the satphase CLI, used by criterion 11.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "satphase/brw.hpp"
#include "satphase/instances.hpp"
#include "satphase/io.hpp"
#include "satphase/kcol.hpp"
#include "satphase/mc.hpp"
#include "satphase/rng.hpp"
#include "satphase/rootfind.hpp"
#include "satphase/solvers.hpp"
#include "satphase/special.hpp"
#include "satphase/surface.hpp"
#include "satphase/threshold.hpp"

using namespace satphase;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double secs(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int idx, const char* name, bool ok, double elapsed,
            const std::string& detail = "") {
    if (!ok) ++failures;
    std::printf("[%s] %2d %-22s %7.2f s%s%s\n", ok ? "PASS" : "FAIL", idx,
                name, elapsed, detail.empty() ? "" : "  ", detail.c_str());
    std::fflush(stdout);
}

void run(int idx, const char* name,
         const std::function<std::string()>& body) {
    auto t0 = Clock::now();
    std::string detail;
    bool ok = false;
    try {
        detail = body();
        ok = detail.empty();
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    report(idx, name, ok, secs(t0), detail);
}

std::string fmt(const char* pattern, double a, double b = 0, double c = 0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c);
    return buf;
}

// captures combined output; ok = command exited with status 0
bool run_cli(const std::string& cmd, std::string& out) {
    out.clear();
    FILE* p = popen((cmd + " 2>&1").c_str(), "r");
    if (!p) return false;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof(buf), p)) > 0) out.append(buf, got);
    return pclose(p) == 0;
}

std::string criterion_alpha_d() {
    const double ref[] = {4.003, 8.360, 16.16, 30.51,
                          57.21, 107.21, 201.29, 379.01};
    const double tol[] = {0.001, 0.001, 0.01, 0.01, 0.01, 0.01, 0.01, 0.01};
    auto t0 = Clock::now();
    for (int k = 3; k <= 10; ++k) {
        double a = alpha_d(k);
        if (std::fabs(a - ref[k - 3]) > tol[k - 3])
            return fmt("k=%.0f: %.6f vs printed %.4f", k, a, ref[k - 3]);
    }
    if (secs(t0) > 1.0) return fmt("took %.2f s, budget 1 s", secs(t0));
    return "";
}

std::string criterion_cusp() {
    auto t0 = Clock::now();
    auto c = find_cusp(3);
    if (std::fabs(c.x0 - 0.145) > 0.002)
        return fmt("x0 = %.6f outside 0.145 +- 0.002", c.x0);
    if (std::fabs(c.z0 - 3.183) > 0.005)
        return fmt("z0 = %.6f outside 3.183 +- 0.005", c.z0);
    double r1 = std::fabs(z_u(3, c.x0, c.u0));
    double r2 = std::fabs(z_uu(3, c.x0, c.u0));
    if (r1 >= 1e-8 || r2 >= 1e-8)
        return fmt("stationarity residuals %.2e, %.2e", r1, r2);
    if (secs(t0) > 1.0) return fmt("took %.2f s, budget 1 s", secs(t0));
    return "";
}

std::string criterion_alpha_c() {
    const double ref[] = {4.396, 10.077, 21.234, 43.45, 87.84};
    const double lower[] = {3.52, 7.91, 18.79, 40.62, 84.82};
    const double upper[] = {4.51, 10.23, 21.33, 43.51, 87.88};

    auto rep = calibrate();
    std::string complaint;
    std::vector<double> got(5, 0.0);
    if (!rep.calibrated) {
        complaint = "no branch policy passes the k=3 anchors";
    } else {
        for (int k = 3; k <= 7 && complaint.empty(); ++k) {
            auto t0 = Clock::now();
            auto curve = trace(k, 1e-4, rep.policy, rep.orientation);
            double dt = secs(t0);
            double a = curve.alpha_c;
            got[k - 3] = a;
            if (std::fabs(a - ref[k - 3]) > 0.01 * ref[k - 3])
                complaint = fmt("k=%.0f: %.4f off printed %.3f by over 1%%",
                                k, a, ref[k - 3]);
            else if (!(a > lower[k - 3] && a < upper[k - 3]))
                complaint = fmt("k=%.0f: %.4f outside bound row", k, a);
            else if (dt > 10.0)
                complaint = fmt("k=%.0f took %.2f s, budget 10 s", k, dt);
        }
    }
    if (complaint.empty()) return "";

    // machine-readable discrepancy report; silent failure is non-conforming
    nlohmann::json doc;
    doc["complaint"] = complaint;
    doc["printed_row"] = std::vector<double>(ref, ref + 5);
    doc["measured_row"] = got;
    doc["candidates"] = nlohmann::json::array();
    for (const auto& e : rep.entries) {
        nlohmann::json j;
        j["policy"] = to_string(e.policy);
        j["orientation"] = e.orientation;
        j["traced"] = e.traced;
        j["alpha_c"] = e.alpha_c;
        j["endpoint_rel_err"] = e.endpoint_rel_err;
        j["pass"] = e.pass;
        if (!e.failure.empty()) j["failure"] = e.failure;
        doc["candidates"].push_back(j);
    }
    write_file("alpha_c_discrepancy.json", doc.dump(2) + "\n");
    return complaint + " (report: alpha_c_discrepancy.json)";
}

std::string criterion_y50_table() {
    const double row[] = {1.45, 1.36, 1.29, 1.25, 1.23, 1.21};
    auto t0 = Clock::now();
    for (size_t i = 0; i < kY50TableNs.size(); ++i) {
        double y = two_decimals(two_sat_y50(kY50TableNs[i]));
        if (std::fabs(y - row[i]) > 1e-9)
            return fmt("N=%.0f: %.2f vs printed %.2f", kY50TableNs[i], y,
                       row[i]);
    }
    auto fit = two_sat_y50_regression(kY50TableNs, true);
    if (fit.C < 0.99 || fit.C > 1.03) return fmt("C = %.4f", fit.C);
    if (fit.X < 1.60 || fit.X > 1.68) return fmt("X = %.4f", fit.X);
    if (fit.r2 < 0.995) return fmt("R^2 = %.4f", fit.r2);
    if (secs(t0) > 1.0) return fmt("took %.2f s, budget 1 s", secs(t0));
    return "";
}

std::string criterion_y50_consistency() {
    double pr = two_sat_prob(300, 1.25).pr;
    if (pr < 0.49 || pr > 0.51)
        return fmt("two_sat_prob(300, 1.25) = %.4f", pr);
    for (double N : kY50TableNs) {
        double p = two_sat_prob(N, two_sat_y50(N)).pr;
        if (std::fabs(p - 0.5) > 1e-12)
            return fmt("N=%.0f: prob(y50) - 0.5 = %.2e", N, p - 0.5);
    }
    return "";
}

std::string criterion_find_y50() {
    auto t0 = Clock::now();
    auto sat = [](int m, std::uint64_t s) {
        return two_sat_solve(gen_ksat(100, m, 2, s));
    };
    double y = find_y50(100, sat, 0.8, 2.0, 2000, 0.02, 20260817ULL);
    if (std::fabs(y - 1.36) > 0.08)
        return fmt("y = %.4f outside 1.36 +- 0.08", y);
    if (secs(t0) > 300.0) return fmt("took %.1f s, budget 300 s", secs(t0));
    return "";
}

std::string criterion_two_p_sat() {
    // z = 0 collapses onto the 2-SAT relation at its own root
    double x = 0.1, y = 1.2;
    double u2s = bisect(
        [&](double u) {
            return y * u / (1.0 - u * u) -
                   std::log((1.0 - u - x / 2) / (1.0 - 2.0 * u));
        },
        0.01, 0.45);
    double r2s = std::fabs(two_p_sat_residual(x, y, 0.0, u2s));
    if (r2s >= 1e-12) return fmt("2-SAT reduction residual %.2e", r2s);

    // y = 0 collapses onto the 3-SAT relation at every surface root
    for (const auto& rt : solve_u(3, 0.1, 3.5).roots) {
        double r3s = std::fabs(two_p_sat_residual(0.1, 0.0, 3.5, rt.u));
        if (r3s >= 1e-12) return fmt("3-SAT reduction residual %.2e", r3s);
    }

    auto w = two_p_sat_pc();
    if (w.p_c != 0.5) return fmt("p_c = %.6f", w.p_c);
    if (std::fabs(w.slope_1e3 - 1.0) > 2e-3)
        return fmt("witness slope at u=1e-3: %.6f", w.slope_1e3);
    if (std::fabs(w.slope_1e4 - 1.0) > 2e-4)
        return fmt("witness slope at u=1e-4: %.6f", w.slope_1e4);
    return "";
}

std::string criterion_kcol() {
    // state-map identity on random admissible states
    Rng rng(7);
    int accepted = 0;
    double worst = 0.0;
    while (accepted < 1000) {
        double u = 0.15 * rng.uniform01();
        double u2 = 0.2 * rng.uniform01();
        double x = 0.1 * rng.uniform01();
        double yy = 0.2 * rng.uniform01();
        if (1.0 - 2 * u - u2 - x - 2 * yy <= 1e-3) continue;
        if (1.0 - 3 * u - 2 * u2 - yy <= 1e-3) continue;
        ++accepted;
        auto [r1, r2] = rho_fields({u, u2}, x, yy);
        auto back = invert_state(r1, r2, x, yy);
        worst = std::fmax(worst, std::fabs(back.u - u));
        worst = std::fmax(worst, std::fabs(back.u2 - u2));
    }
    if (worst > 1e-12) return fmt("state round-trip error %.2e", worst);

    // initial data and its discrete slopes under refinement
    for (int n : {33, 129}) {
        auto g = init_grid(n, n, 0.02, 0.08, 0.1, 0.2);
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix) {
                if (g.at(ix, iy).u != g.xc(ix))
                    return "initial u differs from x";
                if (g.at(ix, iy).u2 != g.yc(iy))
                    return "initial u2 differs from y";
            }
        if (std::fabs(g.init_ux - 1.0) > 1e-10 || std::fabs(g.init_uy) > 1e-10)
            return fmt("n=%.0f: init slopes %.2e, %.2e", n, g.init_ux - 1.0,
                       g.init_uy);
    }

    // first-order convergence on a smooth region (march stops well before
    // the steepening at z ~ 0.6)
    auto march = [](int n) {
        auto g = init_grid(n, n, 0.035, 0.06, 0.23, 0.27);
        auto res = evolve(g, 0.3);
        if (res.halted) throw numeric_error("convergence march halted");
        return g;
    };
    auto g33 = march(33), g65 = march(65), g129 = march(129);
    double d1 = 0, d2 = 0;
    for (int iy = 4; iy < 29; ++iy)
        for (int ix = 4; ix < 29; ++ix) {
            d1 = std::fmax(d1, std::fabs(g33.at(ix, iy).u -
                                         g65.at(2 * ix, 2 * iy).u));
            d2 = std::fmax(d2, std::fabs(g65.at(2 * ix, 2 * iy).u -
                                         g129.at(4 * ix, 4 * iy).u));
        }
    if (!(d1 / d2 >= 1.8))
        return fmt("refinement factor %.3f below 1.8 (d1=%.2e d2=%.2e)",
                   d1 / d2, d1, d2);

    auto t0 = Clock::now();
    auto g = init_grid(128, 128, 0.035, 0.06, 0.23, 0.27);
    auto res = evolve(g, 0.5);
    if (res.halted) return fmt("128x128 march halted at z = %.4f", g.z);
    if (secs(t0) > 30.0) return fmt("took %.1f s, budget 30 s", secs(t0));
    return "";
}

std::string criterion_brw() {
    auto t0 = Clock::now();
    ExceedanceConfig cfg;
    cfg.base.m0 = 2.0;
    cfg.base.step_law = StepLaw::discrete_gaussian;
    cfg.base.step_scale = 4.0;
    cfg.base.generations = 200;
    cfg.base.cap = 100000;
    cfg.base.seed = 20260817ULL;
    cfg.runs = 200;
    auto r = brw_exceedance(cfg);
    if (!(r.slope < 0.0)) return fmt("slope = %.4f not negative", r.slope);
    if (r.r2 < 0.9) return fmt("R^2 = %.4f below 0.9", r.r2);
    if (!r.twin_within) return "twin exceedance above the 2 SE band";
    if (secs(t0) > 300.0) return fmt("took %.1f s, budget 300 s", secs(t0));
    return "";
}

std::string criterion_solver_oracles() {
    // exhaustive agreement over every ordered width-2 clause tuple
    auto sweep = [](int n, int max_m) -> std::string {
        std::vector<int> lits;
        for (int v = 1; v <= n; ++v) {
            lits.push_back(v);
            lits.push_back(-v);
        }
        std::vector<std::vector<int>> pairs;
        for (int a : lits)
            for (int b : lits) pairs.push_back({a, b});
        const int np = static_cast<int>(pairs.size());
        std::vector<int> pick(max_m, 0);
        for (int m = 1; m <= max_m; ++m) {
            std::fill(pick.begin(), pick.end(), 0);
            for (;;) {
                CnfFormula f;
                f.n = n;
                for (int j = 0; j < m; ++j) f.clauses.push_back(pairs[pick[j]]);
                if (two_sat_solve(f) != dpll_sat(f))
                    return fmt("exhaustive disagreement at n=%.0f m=%.0f",
                               n, m);
                int j = m - 1;
                while (j >= 0 && pick[j] == np - 1) pick[j--] = 0;
                if (j < 0) break;
                ++pick[j];
            }
        }
        return "";
    };
    if (auto s = sweep(2, 3); !s.empty()) return s;
    if (auto s = sweep(3, 2); !s.empty()) return s;

    for (int t = 0; t < 2000; ++t) {
        Rng pr(derive_seed(505, t));
        int n = 4 + static_cast<int>(pr.below(9));
        int m = 1 + static_cast<int>(pr.below(3 * n));
        auto f = gen_ksat(n, m, 2, derive_seed(506, t));
        if (two_sat_solve(f) != dpll_sat(f))
            return fmt("disagreement on small random instance %.0f", t);
    }
    for (int t = 0; t < 10000; ++t) {
        Rng pr(derive_seed(909, t));
        int n = 13 + static_cast<int>(pr.below(48));
        int m = static_cast<int>(
            std::llround(n * (0.6 + 0.8 * pr.uniform01())));
        auto f = gen_ksat(n, std::max(m, 1), 2, derive_seed(909, t));
        if (two_sat_solve(f) != dpll_sat(f))
            return fmt("disagreement on large random instance %.0f", t);
    }

    for (int n : {1, 5, 10, 24})
        for (int i = 0; i <= n; i += (n > 2 ? n / 2 : 1)) {
            CnfFormula empty;
            empty.n = n;
            auto u = measure_frozen(empty, i);
            if (!u || *u != i / (2.0 * n))
                return fmt("measure_frozen(n=%.0f, i=%.0f) not exact", n, i);
        }
    return "";
}

std::string cli_path;

std::string criterion_honesty() {
    if (cli_path.empty())
        return "satphase CLI path not supplied as argv[1]";

    std::string out;
    if (!run_cli(cli_path + " mc --k 3 --n 32 --trials 100 --seed 7", out))
        return "mc subcommand failed: " + out.substr(0, 120);
    if (out.find("finite-size") == std::string::npos)
        return "mc output lacks a finite-size caveat";

    if (!run_cli(cli_path + " alpha-c --k 3", out))
        return "alpha-c subcommand failed: " + out.substr(0, 120);
    if (out.find("4.267") == std::string::npos)
        return "alpha-c output does not mention the spin-glass value";
    if (out.find("not adjudicated") == std::string::npos)
        return "alpha-c output lacks the non-adjudication note";
    return "";
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) cli_path = argv[1];

    run(1, "alpha_d table", criterion_alpha_d);
    run(2, "cusp location", criterion_cusp);
    run(3, "alpha_c table", criterion_alpha_c);
    run(4, "2-SAT y50 table", criterion_y50_table);
    run(5, "2-SAT closed form", criterion_y50_consistency);
    run(6, "empirical y50", criterion_find_y50);
    run(7, "(2+p)-SAT", criterion_two_p_sat);
    run(8, "K-COL properties", criterion_kcol);
    run(9, "BRW concentration", criterion_brw);
    run(10, "solver oracles", criterion_solver_oracles);
    run(11, "desk-scale honesty", criterion_honesty);

    std::printf("%d/11 criteria passed\n", 11 - failures);
    return failures == 0 ? 0 : 1;
}
