#ifndef HYDRO_DETAIL_ROOTFIND_HPP
#define HYDRO_DETAIL_ROOTFIND_HPP

#include <cmath>
#include <stdexcept>

namespace hydro::detail {

/**
 * Hybrid secant/bisection root locator on a bracketing interval [lo, hi]
 * with f(lo) and f(hi) of opposite sign (or zero). Secant steps are taken
 * while they stay inside the bracket, bisection otherwise, until the
 * bracket width falls below abs_tol.
 */
template <class F>
double hybrid_root(F&& f, double lo, double hi, double f_lo, double f_hi, double abs_tol) {
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo > 0.0) == (f_hi > 0.0))
        throw std::runtime_error("hybrid_root: interval does not bracket a sign change");
    for (int iter = 0; iter < 200 && hi - lo > abs_tol; ++iter) {
        double mid = lo + 0.5 * (hi - lo);
        const double denom = f_hi - f_lo;
        if (denom != 0.0) {
            const double sec = lo - f_lo * (hi - lo) / denom;
            if (sec > lo && sec < hi) mid = sec;
        }
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    return lo + 0.5 * (hi - lo);
}

}  // namespace hydro::detail

#endif
