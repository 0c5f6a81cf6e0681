#pragma once

// Scalar root finding and one-dimensional maximization shared by the
// geometry and the interval searches.

#include <algorithm>
#include <cmath>
#include <utility>

namespace lensrr::numeric {

/// Bisection on a bracket with f(lo) and f(hi) of opposite signs.  Runs until
/// the bracket cannot shrink further in double precision and returns the
/// endpoint with the smaller residual.
template <class F>
double bisect(F&& f, double lo, double hi, double flo, double fhi)
{
    for (int it = 0; it < 2000; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        const double fm = f(mid);
        if (fm == 0.0) {
            return mid;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    return std::abs(flo) <= std::abs(fhi) ? lo : hi;
}

template <class F>
double bisect(F&& f, double lo, double hi)
{
    return bisect(f, lo, hi, f(lo), f(hi));
}

struct Extremum {
    double arg;
    double value;
};

/// Golden-section maximization of a unimodal function on [lo, hi].  The
/// endpoints are evaluated as well, so boundary maxima are returned exactly.
template <class F>
Extremum golden_max(F&& f, double lo, double hi, double rel_tol = 1e-12)
{
    constexpr double kInvPhi = 0.6180339887498949;
    Extremum best{lo, f(lo)};
    if (const double fh = f(hi); fh > best.value) {
        best = {hi, fh};
    }
    if (!(hi > lo)) {
        return best;
    }
    const double width_tol = rel_tol * std::max(1.0, std::abs(lo) + std::abs(hi));
    double a = lo;
    double b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < 300 && (b - a) > width_tol; ++it) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }
    if (fc > best.value) {
        best = {c, fc};
    }
    if (fd > best.value) {
        best = {d, fd};
    }
    return best;
}

}  // namespace lensrr::numeric
