#pragma once
#include <optional>
#include <vector>

#include "satphase/error.hpp"

namespace satphase {

// The u-surface of random K-SAT: z(u; k, x) relates the clause density z
// to the frozen-literal density u at prefix density x,
//
//   z = 2(1-u^k) / (k u^(k-1)) * ln((1 - u - x/2) / (1 - 2u)),
//
// defined for u in (0, 1/2) with 1 - u - x/2 > 0. u = x/2 gives z = 0.

struct SurfaceQuery {
    int k;
    double x;
    double z;
};

enum class Branch { unique, lower, middle, upper };

struct SurfacePoint {
    SurfaceQuery query;
    double u;
    Branch branch;
};

// Roots of eval_z(k, x, .) = z in the open interval. The u = 0
// continuation (exact at x = 0 for z > 0) is a flag, not a root.
struct SurfaceRoots {
    std::vector<SurfacePoint> roots;  // ascending in u
    bool trivial = false;
};

struct FoldPoints {
    double u_first, z_first;    // stationary point with the smaller u
    double u_second, z_second;  // with the larger u; equal when only one
};

struct CuspPoint {
    int k;
    double x0, z0, u0;
};

double eval_z(int k, double x, double u);
double z_u(int k, double x, double u);    // d z / d u, analytic
double z_uu(int k, double x, double u);   // d^2 z / d u^2, analytic

SurfaceRoots solve_u(int k, double x, double z, double tol = 1e-10);

std::optional<FoldPoints> find_fold(int k, double x);

CuspPoint find_cusp(int k);

double alpha_d(int k);

struct AlphaDAsymptotic {
    double d_star;
    double z_asym;
};
AlphaDAsymptotic alpha_d_asymptotic(int k);

}
