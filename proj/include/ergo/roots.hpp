#pragma once

#include <stdexcept>

namespace ergo {

// Bisection over [lo, hi]; f(lo) and f(hi) must straddle zero. Returns the
// midpoint of the final bracket, narrowed to width <= tol (or to floating
// point resolution, whichever comes first).
template <class F>
double bisect(F&& f, double lo, double hi, double tol = 1e-10) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0)
        return lo;
    if (fhi == 0.0)
        return hi;
    if ((flo < 0.0) == (fhi < 0.0))
        throw std::invalid_argument("bisect: no sign change over the bracket");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi)
            break;
        const double fm = f(mid);
        if (fm == 0.0)
            return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace ergo
