#include "satphase/kcol.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

namespace satphase {

namespace {

std::string cell_tag(double x, double y) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), " at cell (x = %.6g, y = %.6g)", x, y);
    return buf;
}

}  // namespace

std::pair<double, double> rho_fields(const ColState& s, double x, double y) {
    double a1 = 1.0 - 2.0 * s.u - s.u2 - x - 2.0 * y;
    double a2 = 1.0 - 3.0 * s.u - 2.0 * s.u2 - y;
    if (!(a1 > 0.0))
        throw domain_error("rho_fields: 1 - 2u - u2 - x - 2y <= 0" +
                           cell_tag(x, y));
    if (!(a2 > 0.0))
        throw domain_error("rho_fields: 1 - 3u - 2u2 - y <= 0" + cell_tag(x, y));
    return {std::log(a1), std::log(a2)};
}

ColState invert_state(double rho1, double rho2, double x, double y) {
    double a = 1.0 - x - 2.0 * y - std::exp(rho1);
    double b = 1.0 - y - std::exp(rho2);
    ColState s{2.0 * a - b, 2.0 * b - 3.0 * a};
    if (!(s.u > -1e-12) || !(s.u2 > -1e-12))
        throw domain_error("invert_state: negative state" + cell_tag(x, y));
    return s;
}

double flux_f(double u, double y) {
    double g = 1.0 - 3.0 * u * u - 6.0 * u * y;
    if (!(g > 0.0)) {
        char buf[96];
        std::snprintf(buf, sizeof(buf),
                      "flux_f: 1 - 3u^2 - 6uy <= 0 at u = %.6g, y = %.6g", u, y);
        throw domain_error(buf);
    }
    return std::log(g) / 3.0;
}

double ColGrid::xc(int ix) const { return x_lo + ix * dx(); }
double ColGrid::yc(int iy) const { return y_lo + iy * dy(); }
double ColGrid::dx() const { return (x_hi - x_lo) / (nx - 1); }
double ColGrid::dy() const { return (y_hi - y_lo) / (ny - 1); }

ColGrid init_grid(int nx, int ny, double x_lo, double x_hi, double y_lo,
                  double y_hi, double dz) {
    if (nx < 3 || ny < 3)
        throw domain_error("init_grid: need at least 3 points per axis");
    if (!(x_hi > x_lo) || !(y_hi > y_lo))
        throw domain_error("init_grid: empty range");
    if (!(x_lo >= 0.0) || !(y_lo >= 0.0))
        throw domain_error("init_grid: negative range");
    if (!(dz >= 0.0)) throw domain_error("init_grid: dz < 0");

    ColGrid g;
    g.nx = nx;
    g.ny = ny;
    g.x_lo = x_lo;
    g.x_hi = x_hi;
    g.y_lo = y_lo;
    g.y_hi = y_hi;
    g.dz = dz;
    g.u.resize(size_t(nx) * ny);
    g.u2.resize(size_t(nx) * ny);
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            double x = g.xc(ix);
            double y = g.yc(iy);
            // in-domain check: both log arguments equal 1 - 3(x + y) at
            // z = 0, and the flux argument must be positive too
            rho_fields({x, y}, x, y);
            flux_f(x, y);
            g.u[size_t(iy) * nx + ix] = x;
            g.u2[size_t(iy) * nx + ix] = y;
        }
    }

    int mx = nx / 2, my = ny / 2;
    g.init_ux = (g.at(mx + 1, my).u - g.at(mx - 1, my).u) / (2.0 * g.dx());
    g.init_uy = (g.at(mx, my + 1).u - g.at(mx, my - 1).u) / (2.0 * g.dy());
    return g;
}

namespace {

struct StepScratch {
    std::vector<double> r1, r2, f, lam_x, lam_y, rhs1, rhs2;
};

// One forward-Euler step of the full grid. Offending cells (if any) go
// to `events`; the grid is committed only when the step is clean.
bool step_impl(ColGrid& g, const EvolveOptions& opt,
               std::vector<Singularity>& events) {
    const int nx = g.nx, ny = g.ny;
    const size_t n = size_t(nx) * ny;
    const double dx = g.dx(), dy = g.dy();

    thread_local StepScratch s;
    s.r1.resize(n); s.r2.resize(n); s.f.resize(n);
    s.lam_x.resize(n); s.lam_y.resize(n);
    s.rhs1.resize(n); s.rhs2.resize(n);

    auto id = [&](int ix, int iy) { return size_t(iy) * nx + ix; };

    // current fields; the flux argument check is NaN-aware on purpose
    bool bad = false;
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            size_t c = id(ix, iy);
            double x = g.xc(ix), y = g.yc(iy);
            double u = g.u[c], u2 = g.u2[c];
            double a1 = 1.0 - 2.0 * u - u2 - x - 2.0 * y;
            double a2 = 1.0 - 3.0 * u - 2.0 * u2 - y;
            double gf = 1.0 - 3.0 * u * u - 6.0 * u * y;
            if (!(gf > opt.domain_floor)) {
                events.push_back({x, y, g.z, "flux argument below floor"});
                bad = true;
                continue;
            }
            if (!(a1 > 0.0) || !(a2 > 0.0)) {
                events.push_back({x, y, g.z, "log argument not positive"});
                bad = true;
                continue;
            }
            s.r1[c] = std::log(a1);
            s.r2[c] = std::log(a2);
            s.f[c] = std::log(gf) / 3.0;
            s.lam_x[c] = std::abs(4.0 * (u + y) * a1 / gf);
            s.lam_y[c] = std::abs(2.0 * (u + y) * a2 / gf);
        }
    }
    if (bad) return false;

    double dz = g.dz;
    if (dz == 0.0) {
        double lx = 1e-12, ly = 1e-12;
        for (size_t c = 0; c < n; ++c) {
            lx = std::max(lx, s.lam_x[c]);
            ly = std::max(ly, s.lam_y[c]);
        }
        dz = opt.cfl * std::min(dx / lx, dy / ly);
    }

    // central flux differences with local Lax-Friedrichs dissipation on
    // the interior; one-sided differences and no dissipation at edges
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            size_t c = id(ix, iy);
            double d1, v1 = 0.0;
            if (ix == 0) {
                d1 = (s.f[id(1, iy)] - s.f[id(0, iy)]) / dx;
            } else if (ix == nx - 1) {
                d1 = (s.f[id(nx - 1, iy)] - s.f[id(nx - 2, iy)]) / dx;
            } else {
                size_t l = id(ix - 1, iy), r = id(ix + 1, iy);
                d1 = (s.f[r] - s.f[l]) / (2.0 * dx);
                double alpha = std::max({s.lam_x[l], s.lam_x[c], s.lam_x[r]});
                v1 = alpha * (s.r1[r] - 2.0 * s.r1[c] + s.r1[l]) / (2.0 * dx);
            }
            double d2, v2 = 0.0;
            if (iy == 0) {
                d2 = (s.f[id(ix, 1)] - s.f[id(ix, 0)]) / dy;
            } else if (iy == ny - 1) {
                d2 = (s.f[id(ix, ny - 1)] - s.f[id(ix, ny - 2)]) / dy;
            } else {
                size_t b = id(ix, iy - 1), t = id(ix, iy + 1);
                d2 = (s.f[t] - s.f[b]) / (2.0 * dy);
                double alpha = std::max({s.lam_y[b], s.lam_y[c], s.lam_y[t]});
                v2 = alpha * (s.r2[t] - 2.0 * s.r2[c] + s.r2[b]) / (2.0 * dy);
            }
            s.rhs1[c] = d1 + v1;
            s.rhs2[c] = d2 + v2;
        }
    }

    // trial update, checked before committing
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            size_t c = id(ix, iy);
            double x = g.xc(ix), y = g.yc(iy);
            double r1n = s.r1[c] + dz * s.rhs1[c];
            double r2n = s.r2[c] + dz * s.rhs2[c];
            double a = 1.0 - x - 2.0 * y - std::exp(r1n);
            double b = 1.0 - y - std::exp(r2n);
            double un = 2.0 * a - b;
            double u2n = 2.0 * b - 3.0 * a;
            double a1 = 1.0 - 2.0 * un - u2n - x - 2.0 * y;
            double a2 = 1.0 - 3.0 * un - 2.0 * u2n - y;
            double zn = g.z + dz;
            if (!(a1 > opt.domain_floor))
                events.push_back({x, y, zn, "rho1 argument below floor"});
            else if (!(a2 > opt.domain_floor))
                events.push_back({x, y, zn, "rho2 argument below floor"});
            else if (!(un > -1e-12))
                events.push_back({x, y, zn, "u negative"});
            else if (!(u2n > -1e-12))
                events.push_back({x, y, zn, "u2 negative"});
            else {
                s.rhs1[c] = un;   // reuse as the new-state buffers
                s.rhs2[c] = u2n;
                continue;
            }
            bad = true;
        }
    }
    if (bad) return false;

    g.u.assign(s.rhs1.begin(), s.rhs1.end());
    g.u2.assign(s.rhs2.begin(), s.rhs2.end());
    g.z += dz;
    return true;
}

}  // namespace

std::optional<Singularity> step(ColGrid& g, const EvolveOptions& opt) {
    std::vector<Singularity> events;
    if (step_impl(g, opt, events)) return std::nullopt;
    return events.front();
}

EvolveResult evolve(ColGrid& g, double z_end, const EvolveOptions& opt) {
    if (!(z_end > g.z)) throw domain_error("evolve: z_end <= grid z");

    EvolveResult res;
    std::vector<char> spiked(size_t(g.nx) * g.ny, 0);

    while (g.z < z_end) {
        double saved_dz = g.dz;
        if (g.dz > 0.0 && g.z + g.dz > z_end) g.dz = z_end - g.z;
        double z_before = g.z;
        bool ok = step_impl(g, opt, res.events);
        g.dz = saved_dz;
        if (!ok) {
            res.halted = true;
            return res;
        }
        if (saved_dz == 0.0 && g.z - z_before < 1e-13) {
            // CFL step collapsed; the march cannot cross a forming shock
            res.events.push_back({0.0, 0.0, g.z, "time step collapsed"});
            res.halted = true;
            return res;
        }
        // flag steep gradients without halting, each cell once
        const double dx = g.dx(), dy = g.dy();
        for (int iy = 1; iy + 1 < g.ny; ++iy) {
            for (int ix = 1; ix + 1 < g.nx; ++ix) {
                size_t c = size_t(iy) * g.nx + ix;
                if (spiked[c]) continue;
                double gx = (g.u[c + 1] - g.u[c - 1]) / (2.0 * dx);
                double gy = (g.u[c + g.nx] - g.u[c - g.nx]) / (2.0 * dy);
                if (std::abs(gx) > opt.spike_threshold ||
                    std::abs(gy) > opt.spike_threshold) {
                    spiked[c] = 1;
                    res.events.push_back(
                        {g.xc(ix), g.yc(iy), g.z, "gradient spike"});
                }
            }
        }
    }
    return res;
}

}  // namespace satphase
