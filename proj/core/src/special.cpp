#include "satphase/special.hpp"

#include <algorithm>
#include <cmath>

namespace satphase {

const std::vector<double> kY50TableNs = {50, 100, 200, 300, 400, 500};
const std::vector<double> kSimon1986Y50 = {1.40, 1.40, 1.23, 1.22, 1.22, 1.18};

TwoSatProb two_sat_prob(double N, double y, double c_w) {
    if (!(N >= 1.0)) throw domain_error("two_sat_prob: N < 1");
    if (!(y >= 0.0)) throw domain_error("two_sat_prob: y < 0");
    if (!(c_w > 0.0)) throw domain_error("two_sat_prob: c_w <= 0");

    TwoSatProb out;
    out.in_window = std::abs(y - 1.0) < c_w / std::sqrt(N);
    if (y < 1.0 && !out.in_window) {
        out.pr = 1.0;
        return out;
    }
    double t = y - 1.0;
    double pr = std::exp(-N * (4.0 / 27.0) * t * t * t);
    out.pr = pr > 1.0 ? 1.0 : pr;
    return out;
}

double two_sat_y50(double N) {
    if (!(N >= 1.0)) throw domain_error("two_sat_y50: N < 1");
    return 1.0 + 3.0 * std::cbrt(0.25 * std::log(2.0)) / std::cbrt(N);
}

double two_decimals(double v) { return std::round(v * 100.0) / 100.0; }

Y50Fit y50_regression(const std::vector<double>& Ns,
                      const std::vector<double>& y50s) {
    if (Ns.size() != y50s.size())
        throw domain_error("y50_regression: length mismatch");
    const size_t n = Ns.size();
    if (n < 3) throw domain_error("y50_regression: need at least 3 points");

    // Ordinary least squares of y50 against N^(-1/3).
    double sx = 0, sy = 0;
    std::vector<double> xs(n);
    for (size_t i = 0; i < n; ++i) {
        if (!(Ns[i] >= 1.0))
            throw domain_error("y50_regression: N < 1");
        xs[i] = 1.0 / std::cbrt(Ns[i]);
        sx += xs[i];
        sy += y50s[i];
    }
    if (*std::max_element(xs.begin(), xs.end()) ==
        *std::min_element(xs.begin(), xs.end()))
        throw domain_error("y50_regression: all N equal, slope undetermined");
    double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (y50s[i] - my);
    }
    if (sxx == 0.0)
        throw domain_error("y50_regression: all N equal, slope undetermined");
    Y50Fit fit;
    fit.X = sxy / sxx;
    fit.C = my - fit.X * mx;
    double ss_res = 0, ss_tot = 0;
    for (size_t i = 0; i < n; ++i) {
        double pred = fit.C + fit.X * xs[i];
        ss_res += (y50s[i] - pred) * (y50s[i] - pred);
        ss_tot += (y50s[i] - my) * (y50s[i] - my);
    }
    fit.r2 = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
    return fit;
}

Y50Fit two_sat_y50_regression(const std::vector<double>& Ns,
                              bool printed_digits) {
    std::vector<double> ys(Ns.size());
    for (size_t i = 0; i < Ns.size(); ++i) {
        double y = two_sat_y50(Ns[i]);
        ys[i] = printed_digits ? two_decimals(y) : y;
    }
    return y50_regression(Ns, ys);
}

double two_p_sat_residual(double x, double y, double z, double u) {
    if (!(x >= 0.0) || x >= 1.0)
        throw domain_error("two_p_sat_residual: x outside [0, 1)");
    if (!(u >= 0.0) || !(u < 0.5))
        throw domain_error("two_p_sat_residual: u outside [0, 1/2)");
    if (!(1.0 - u - 0.5 * x > 0.0))
        throw domain_error("two_p_sat_residual: 1 - u - x/2 <= 0");
    double u2 = u * u;
    double u3 = u2 * u;
    double lhs = z * 3.0 * u2 / (2.0 * (1.0 - u3)) + y * u / (1.0 - u2);
    return lhs - std::log1p((u - 0.5 * x) / (1.0 - 2.0 * u));
}

PcWitness two_p_sat_pc() {
    // At the candidate p_c the 3-clause term is second order in u, so the
    // 2-clause coefficient y must satisfy y - 1 = (1 - z) * (3u/2) to
    // first order. The witness reports the ratio at two small u.
    auto ratio_at = [](double u) {
        const double z = 0.5;
        double u2 = u * u;
        double u3 = u2 * u;
        double rhs = std::log1p(u / (1.0 - 2.0 * u)) -
                     z * 3.0 * u2 / (2.0 * (1.0 - u3));
        double y = rhs * (1.0 - u2) / u;
        return (y - 1.0) / ((1.0 - z) * 1.5 * u);
    };
    return PcWitness{0.5, ratio_at(1e-3), ratio_at(1e-4)};
}

double two_p_sat_y50(double N, double z, double Pr) {
    if (!(N >= 1.0)) throw domain_error("two_p_sat_y50: N < 1");
    if (!(z >= 0.0) || !(z < 1.0))
        throw domain_error("two_p_sat_y50: z outside [0, 1)");
    if (!(Pr > 0.0) || !(Pr < 1.0))
        throw domain_error("two_p_sat_y50: Pr outside (0, 1)");
    double c = (1.0 - z) * (1.0 - z) * 0.25 * std::log(1.0 / Pr);
    return 1.0 + 3.0 * std::cbrt(c) / std::cbrt(N);
}

double two_col_y50(double N) { return two_sat_y50(N); }

}  // namespace satphase
