#include "satphase/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "satphase/rootfind.hpp"

namespace satphase {

namespace {

constexpr double kUMin = 1e-12;
constexpr double kUMax = 0.5 - 1e-12;
constexpr int kGridSize = 2048;

// u^k for the small integer k we actually use; pow() is the hot spot
// otherwise.
double upow(double u, int k) {
    double r = u;
    for (int i = 1; i < k; ++i) r *= u;
    return r;
}

void check_ku(int k, double x, double u, const char* who) {
    if (k < 2) throw domain_error(std::string(who) + ": k < 2");
    if (!(x >= 0.0) || x >= 1.0)
        throw domain_error(std::string(who) + ": x outside [0, 1)");
    if (!(u > 0.0))
        throw domain_error(std::string(who) + ": u <= 0");
    if (!(u < 0.5))
        throw domain_error(std::string(who) + ": u >= 1/2");
    if (!(1.0 - u - 0.5 * x > 0.0))
        throw domain_error(std::string(who) + ": 1 - u - x/2 <= 0");
}

// Log-uniform scan grid on (0, 1/2); the interesting structure piles up
// near u = 0.
const std::vector<double>& scan_grid() {
    static const std::vector<double> g = [] {
        std::vector<double> v(kGridSize);
        const double la = std::log(kUMin);
        const double lb = std::log(kUMax);
        for (int i = 0; i < kGridSize; ++i)
            v[i] = std::exp(la + (lb - la) * i / (kGridSize - 1));
        return v;
    }();
    return g;
}

// Stationary points of z(u) at fixed (k, x): sign changes of z_u on the
// scan grid, refined by bisection. solve_u and find_fold both need them,
// and the tracer asks for the same (k, x) many times per step.
std::vector<double> stationary_points(int k, double x) {
    struct Cache {
        int k = -1;
        double x = -1.0;
        std::vector<double> knots;
    };
    thread_local Cache cache;
    if (cache.k == k && cache.x == x) return cache.knots;

    const auto& g = scan_grid();
    std::vector<double> knots;
    double prev = z_u(k, x, g[0]);
    for (int i = 1; i < kGridSize; ++i) {
        double cur = z_u(k, x, g[i]);
        if (std::signbit(prev) != std::signbit(cur)) {
            knots.push_back(bisect([&](double u) { return z_u(k, x, u); },
                                   g[i - 1], g[i], 0.0));
        }
        prev = cur;
    }
    cache.k = k;
    cache.x = x;
    cache.knots = knots;
    return knots;
}

}  // namespace

double eval_z(int k, double x, double u) {
    check_ku(k, x, u, "eval_z");
    const double q = 1.0 - 2.0 * u;
    const double uk = upow(u, k);
    const double a = 2.0 * (1.0 - uk) / (k * (uk / u));
    // ln((1 - u - x/2) / (1 - 2u)) = log1p((u - x/2) / (1 - 2u))
    return a * std::log1p((u - 0.5 * x) / q);
}

double z_u(int k, double x, double u) {
    check_ku(k, x, u, "z_u");
    const double p = 1.0 - u - 0.5 * x;
    const double q = 1.0 - 2.0 * u;
    const double uk = upow(u, k);
    const double a = (2.0 / k) * (u / uk - u);
    const double da = (2.0 / k) * ((1.0 - k) / uk - 1.0);
    const double b = std::log1p((u - 0.5 * x) / q);
    const double db = -1.0 / p + 2.0 / q;
    return da * b + a * db;
}

double z_uu(int k, double x, double u) {
    check_ku(k, x, u, "z_uu");
    const double p = 1.0 - u - 0.5 * x;
    const double q = 1.0 - 2.0 * u;
    const double uk = upow(u, k);
    const double a = (2.0 / k) * (u / uk - u);
    const double da = (2.0 / k) * ((1.0 - k) / uk - 1.0);
    const double dda = 2.0 * (k - 1) / (uk * u);
    const double b = std::log1p((u - 0.5 * x) / q);
    const double db = -1.0 / p + 2.0 / q;
    const double ddb = -1.0 / (p * p) + 4.0 / (q * q);
    return dda * b + 2.0 * da * db + a * ddb;
}

SurfaceRoots solve_u(int k, double x, double z, double tol) {
    if (k < 2) throw domain_error("solve_u: k < 2");
    if (!(x >= 0.0) || x >= 1.0) throw domain_error("solve_u: x outside [0, 1)");
    if (!(z >= 0.0)) throw domain_error("solve_u: z < 0");
    if (!(tol > 0.0)) throw domain_error("solve_u: tol <= 0");

    SurfaceRoots out;
    out.trivial = (x == 0.0);

    if (z == 0.0) {
        // z vanishes exactly at u = x/2 and nowhere else.
        if (x > 0.0)
            out.roots.push_back({{k, x, z}, 0.5 * x, Branch::unique});
        return out;
    }

    // Scan knots: the log-uniform grid plus the stationary points, so a
    // root pair hugging a fold cannot hide inside one grid cell.
    std::vector<double> knots = scan_grid();
    for (double s : stationary_points(k, x)) knots.push_back(s);
    std::sort(knots.begin(), knots.end());

    std::vector<double> roots;
    double prev = eval_z(k, x, knots[0]) - z;
    for (size_t i = 1; i < knots.size(); ++i) {
        if (knots[i] == knots[i - 1]) continue;
        double cur = eval_z(k, x, knots[i]) - z;
        if (std::signbit(prev) != std::signbit(cur)) {
            roots.push_back(bisect(
                [&](double u) { return eval_z(k, x, u) - z; },
                knots[i - 1], knots[i], 0.0));
        }
        prev = cur;
    }

    for (double u : roots) {
        double resid = std::abs(eval_z(k, x, u) - z);
        // A root pinned to the last ulp of u still carries a z-residual of
        // order |z_u| ulp(u); on the steep wall near u = x/2 that floor can
        // dwarf any fixed tolerance, so the gate allows for it.
        double floor_z = 8.0 * std::numeric_limits<double>::epsilon() *
                         std::abs(z_u(k, x, u)) * u;
        if (!(resid <= tol * std::max(1.0, z) + floor_z))
            throw numeric_error("solve_u: root residual " +
                                std::to_string(resid) + " above tolerance");
    }

    const size_t n = roots.size();
    for (size_t i = 0; i < n; ++i) {
        Branch b = Branch::unique;
        if (n > 1)
            b = (i == 0) ? Branch::lower
                         : (i == n - 1 ? Branch::upper : Branch::middle);
        out.roots.push_back({{k, x, z}, roots[i], b});
    }
    return out;
}

std::optional<FoldPoints> find_fold(int k, double x) {
    if (k < 2) throw domain_error("find_fold: k < 2");
    if (!(x >= 0.0) || x >= 1.0)
        throw domain_error("find_fold: x outside [0, 1)");
    auto s = stationary_points(k, x);
    if (s.empty()) return std::nullopt;
    if (s.size() > 2)
        throw numeric_error("find_fold: more than two stationary points");
    double u1 = s.front(), u2 = s.back();
    return FoldPoints{u1, eval_z(k, x, u1), u2, eval_z(k, x, u2)};
}

CuspPoint find_cusp(int k) {
    if (k < 3) throw domain_error("find_cusp: k < 3");

    // Fold count along x: 2 below the cusp, 0 above. Bracket the merge.
    auto fold_count = [&](double x) -> int {
        auto f = find_fold(k, x);
        if (!f) return 0;
        return f->u_first != f->u_second ? 2 : 1;
    };

    const int npts = 400;
    const double x_a = 1e-3, x_b = 0.95;
    double lo = -1.0, hi = -1.0;
    int prev_cnt = -1;
    double prev_x = 0.0;
    for (int i = 0; i < npts; ++i) {
        double x = x_a + (x_b - x_a) * i / (npts - 1);
        int cnt = fold_count(x);
        if (prev_cnt == 2 && cnt < 2) {
            lo = prev_x;
            hi = x;
            break;
        }
        prev_cnt = cnt;
        prev_x = x;
    }
    if (lo < 0.0)
        throw numeric_error("find_cusp: no fold merge found for x in (0.001, 0.95)");

    for (int it = 0; it < 40; ++it) {
        double mid = 0.5 * (lo + hi);
        if (fold_count(mid) == 2)
            lo = mid;
        else
            hi = mid;
    }

    auto folds = find_fold(k, lo);
    if (!folds)
        throw numeric_error("find_cusp: fold pair lost during bisection");
    double u = 0.5 * (folds->u_first + folds->u_second);
    double x = lo;

    // Polish (u, x) on z_u = z_uu = 0 with a damped Newton iteration.
    auto in_domain = [&](double uu, double xx) {
        return uu > 0.0 && uu < 0.5 && xx >= 0.0 && xx < 1.0 &&
               1.0 - uu - 0.5 * xx > 0.0;
    };
    const double h = 1e-7;
    for (int it = 0; it < 200; ++it) {
        double g1 = z_u(k, x, u);
        double g2 = z_uu(k, x, u);
        if (std::max(std::abs(g1), std::abs(g2)) < 1e-11) break;
        double j11 = (z_u(k, x, u + h) - z_u(k, x, u - h)) / (2 * h);
        double j12 = (z_u(k, x + h, u) - z_u(k, x - h, u)) / (2 * h);
        double j21 = (z_uu(k, x, u + h) - z_uu(k, x, u - h)) / (2 * h);
        double j22 = (z_uu(k, x + h, u) - z_uu(k, x - h, u)) / (2 * h);
        double det = j11 * j22 - j12 * j21;
        if (det == 0.0)
            throw numeric_error("find_cusp: singular Jacobian");
        double du = (-g1 * j22 + g2 * j12) / det;
        double dx = (-g2 * j11 + g1 * j21) / det;
        double norm0 = std::hypot(g1, g2);
        bool moved = false;
        for (double lam = 1.0; lam > 1e-6; lam *= 0.5) {
            double un = u + lam * du;
            double xn = x + lam * dx;
            if (!in_domain(un, xn)) continue;
            if (std::hypot(z_u(k, xn, un), z_uu(k, xn, un)) < norm0) {
                u = un;
                x = xn;
                moved = true;
                break;
            }
        }
        if (!moved) break;
    }

    if (std::abs(z_u(k, x, u)) >= 1e-8 || std::abs(z_uu(k, x, u)) >= 1e-8)
        throw numeric_error("find_cusp: stationarity residual above 1e-8");
    return CuspPoint{k, x, eval_z(k, x, u), u};
}

double alpha_d(int k) {
    if (k < 3) throw domain_error("alpha_d: k < 3");
    auto s = stationary_points(k, 0.0);
    if (s.size() != 1)
        throw numeric_error("alpha_d: expected a single interior minimum at x = 0");
    return eval_z(k, 0.0, s[0]);
}

AlphaDAsymptotic alpha_d_asymptotic(int k) {
    if (k < 2) throw domain_error("alpha_d_asymptotic: k < 2");
    const double lk = std::log(static_cast<double>(k));

    // Damped fixed-point iteration for d = ln(ln(k)/2 + d/2). When no
    // fixed point exists (small k) the iterates slide below the log
    // domain; report that instead of looping.
    double d = 0.0;
    for (int it = 0; it < 2000; ++it) {
        double arg = 0.5 * lk + 0.5 * d;
        if (!(arg > 0.0))
            throw numeric_error(
                "alpha_d_asymptotic: iteration left the log domain; "
                "no fixed point at this k");
        double next = 0.5 * d + 0.5 * std::log(arg);
        if (std::abs(next - d) < 1e-16) {
            d = next;
            break;
        }
        d = next;
    }
    double arg = 0.5 * lk + 0.5 * d;
    if (!(arg > 0.0) || std::abs(d - std::log(arg)) >= 1e-12)
        throw numeric_error("alpha_d_asymptotic: no convergence to 1e-12");
    double z = std::pow(2.0, k) / k * (lk + d);
    return AlphaDAsymptotic{d, z};
}

}  // namespace satphase
