#pragma once
#include <string>
#include <vector>

#include "satphase/error.hpp"
#include "satphase/surface.hpp"

namespace satphase {

// Critical line in the (x, z) plane from the cusp down to x = 0, where z
// is the phase transition density alpha_c. Along the curve the two
// u-branches carry equal weight, which fixes the slope to the quotient
//
//   [ln(1 - x/2 - u_u) - ln(1 - x/2 - u_l)] / [ln(1 - u_u^k) - ln(1 - u_l^k)]
//
// up to orientation; the sign and the identity of u_l are calibrated
// against the printed k = 3 anchors (see calibrate()).

enum class BranchPolicy { paired_roots, trivial_lower };

struct CurvePoint {
    double x, z, u_lower, u_upper;
};

struct ThresholdCurve {
    int k = 0;
    std::vector<CurvePoint> points;  // x strictly decreasing, first ~ cusp
    double alpha_c = 0.0;
};

struct trace_failure : error {
    CurvePoint last_good;
    trace_failure(const std::string& msg, CurvePoint p)
        : error(msg), last_good(p) {}
};

// dz/dx under the calibrated orientation; merged branches take the
// L'Hopital limit (1 - u^k) / (k u^(k-1) (1 - x/2 - u)).
double slope(int k, double x, double z, double u_l, double u_u,
             int orientation = -1);

ThresholdCurve trace(int k, double dx_step = 1e-4,
                     BranchPolicy policy = BranchPolicy::trivial_lower,
                     int orientation = -1);

double alpha_c(int k);

// Anchor-passing calibration on k = 3: tries every (policy, orientation)
// candidate and records which one connects the cusp to (0, alpha_c)
// within 1% of the printed anchors. The survivors' configuration is the
// library default; `calibrated == false` means no candidate passed and
// the entries quantify the mismatch.
struct CalibrationEntry {
    BranchPolicy policy;
    int orientation;
    bool traced = false;         // reached x = 0 without root loss
    double alpha_c = 0.0;
    double endpoint_rel_err = 0.0;
    bool pass = false;
    std::string failure;         // trace error message when !traced
};

struct CalibrationReport {
    std::vector<CalibrationEntry> entries;
    bool calibrated = false;
    BranchPolicy policy = BranchPolicy::trivial_lower;
    int orientation = -1;
};

CalibrationReport calibrate();

const char* to_string(BranchPolicy p);

}
