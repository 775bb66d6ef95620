#pragma once
#include <vector>

#include "satphase/error.hpp"

namespace satphase {

// 2-SAT scaling law: Pr(sat) = 1 for y < 1 and exp(-N (4/27) (y-1)^3)
// for y >= 1, valid outside the Theta(N^(-1/2)) transition window. The
// 50% point is y50 = 1 + 3 (ln2 / 4)^(1/3) N^(-1/3).

struct TwoSatProb {
    double pr;
    bool in_window;  // |y - 1| < c_w N^(-1/2): value outside the law's regime
};

TwoSatProb two_sat_prob(double N, double y, double c_w = 1.0);

double two_sat_y50(double N);

// table convention: values printed to two decimals
double two_decimals(double v);

struct Y50Fit {
    double C, X, r2;  // y50 ~ C + X * N^(-1/3)
};

Y50Fit y50_regression(const std::vector<double>& Ns,
                      const std::vector<double>& y50s);

// fit on the model values; printed_digits applies the table convention first
Y50Fit two_sat_y50_regression(const std::vector<double>& Ns,
                              bool printed_digits);

// mixed-width relation: z * 3u^2/(2(1-u^3)) + y * u/(1-u^2)
//                        - ln((1 - u - x/2)/(1 - 2u))
double two_p_sat_residual(double x, double y, double z, double u);

struct PcWitness {
    double p_c;            // 0.5, where y = z = 1
    double slope_1e3;      // (y(u) - 1) / ((1-z) 3u/2) at u = 1e-3, z = 0.5
    double slope_1e4;      // same at u = 1e-4
};
PcWitness two_p_sat_pc();

double two_p_sat_y50(double N, double z, double Pr);

double two_col_y50(double N);  // 2-COL transition scales exactly as 2-SAT

// reference data for the y50 comparison table (Simon et al., 1986)
extern const std::vector<double> kY50TableNs;
extern const std::vector<double> kSimon1986Y50;

}
