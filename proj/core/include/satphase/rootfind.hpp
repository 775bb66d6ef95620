#pragma once
#include <cmath>
#include <utility>

#include "satphase/error.hpp"

namespace satphase {

// Plain bisection on a bracketing interval. f(a) and f(b) must have
// opposite signs (zero endpoints are accepted as roots).
template <class F>
double bisect(F&& f, double a, double b, double tol = 1e-14, int max_iter = 200) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (std::signbit(fa) == std::signbit(fb))
        throw numeric_error("bisect: endpoints do not bracket a root");
    for (int it = 0; it < max_iter; ++it) {
        double m = 0.5 * (a + b);
        if (b - a < tol || m == a || m == b) return m;
        double fm = f(m);
        if (fm == 0.0) return m;
        if (std::signbit(fm) == std::signbit(fa)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

}
