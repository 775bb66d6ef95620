#pragma once
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "satphase/error.hpp"

namespace satphase {

// 3-color conservation-law system marched in z:
//   d rho1 / dz = d f / dx,   d rho2 / dz = d f / dy
// with rho1 = ln(1 - 2u - u2 - x - 2y), rho2 = ln(1 - 3u - 2u2 - y),
// f = (1/3) ln(1 - 3u^2 - 6uy), initial data u = x, u2 = y at z = 0.
// The evolved variables are (rho1, rho2); the state map is the linear
// system 2u + u2 = a, 3u + 2u2 = b with a = 1 - x - 2y - e^rho1,
// b = 1 - y - e^rho2 (determinant 1).

struct ColState {
    double u, u2;
};

std::pair<double, double> rho_fields(const ColState& s, double x, double y);
ColState invert_state(double rho1, double rho2, double x, double y);
double flux_f(double u, double y);

struct Singularity {
    double x, y, z;
    std::string reason;
};

struct ColGrid {
    int nx = 0, ny = 0;
    double x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;
    double z = 0;
    double dz = 0;        // fixed march step; 0 = per-step CFL choice
    double init_ux = 0;   // discrete du/dx measured at z = 0
    double init_uy = 0;
    std::vector<double> u, u2;  // row-major, index = iy * nx + ix

    double xc(int ix) const;  // cell-center coordinates
    double yc(int iy) const;
    double dx() const;
    double dy() const;
    ColState at(int ix, int iy) const {
        return {u[size_t(iy) * nx + ix], u2[size_t(iy) * nx + ix]};
    }
};

struct EvolveOptions {
    double domain_floor = 1e-6;   // halt when any log argument falls below
    double spike_threshold = 1e3; // |grad rho| flag level, does not halt
    double cfl = 0.4;
};

ColGrid init_grid(int nx, int ny, double x_lo, double x_hi,
                  double y_lo, double y_hi, double dz = 0.0);

// One march step. On a domain violation the grid is left at the last
// good state and the first offending cell is returned.
std::optional<Singularity> step(ColGrid& g, const EvolveOptions& opt = {});

struct EvolveResult {
    bool halted = false;
    std::vector<Singularity> events;  // halt cells and first-time spike cells
};

EvolveResult evolve(ColGrid& g, double z_end, const EvolveOptions& opt = {});

}
