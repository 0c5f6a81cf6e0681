#pragma once

// Supremum of a functional of interval averages over all subintervals
// [s, t] of [0, 1] for a step function.
//
// Two phases per pair of pieces (i, j) holding s and t:
//   (a) the breakpoint-aligned interval [b_i, b_{j+1}] exactly;
//   (b) coordinate-wise golden-section ascent in (s, t) from the best corner.
// Within a pair the average moves along straight lines in each coordinate,
// which keeps the one-dimensional slices unimodal for the lens gauges used
// here.

#include "lensrr/characteristics.hpp"
#include "lensrr/numeric.hpp"

#include <cmath>
#include <concepts>
#include <limits>
#include <span>

namespace lensrr {

/// prepare(i, j) is called before evaluating a pair; pairs are visited with i
/// ascending and j ascending within each i.
template <class T>
concept IntervalObjective = requires(T obj, std::size_t i, std::size_t j, double s, double t) {
    { obj.prepare(i, j) };
    { obj(i, j, s, t) } -> std::convertible_to<double>;
};

template <IntervalObjective Objective>
IntervalSup maximize_over_intervals(std::span<const double> bp, Objective& obj, double rel_tol = 1e-12)
{
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    const std::size_t m = bp.size() - 1;
    IntervalSup best{kNegInf, 0.0, 1.0};
    auto consider = [&](double v, double s, double t) {
        if (v > best.value) {
            best = {v, s, t};
        }
    };

    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            obj.prepare(i, j);
            const double aligned = obj(i, j, bp[i], bp[j + 1]);
            consider(aligned, bp[i], bp[j + 1]);
            if (i == j) {
                continue;
            }
            double s = bp[i];
            double t = bp[j + 1];
            double v = aligned;
            for (const double cs : {bp[i], bp[i + 1]}) {
                for (const double ct : {bp[j], bp[j + 1]}) {
                    if (ct <= cs) {
                        continue;
                    }
                    const double c = obj(i, j, cs, ct);
                    if (c > v) {
                        v = c;
                        s = cs;
                        t = ct;
                    }
                }
            }
            for (int round = 0; round < 100; ++round) {
                double cur = v;
                const auto rs = numeric::golden_max([&](double x) { return obj(i, j, x, t); }, bp[i], bp[i + 1],
                                                    rel_tol);
                if (rs.value > cur) {
                    s = rs.arg;
                    cur = rs.value;
                }
                const auto rt = numeric::golden_max([&](double x) { return obj(i, j, s, x); }, bp[j], bp[j + 1],
                                                    rel_tol);
                if (rt.value > cur) {
                    t = rt.arg;
                    cur = rt.value;
                }
                const bool stalled = cur <= v + 1e-15 * std::max(1.0, std::abs(v));
                v = cur;
                if (stalled) {
                    break;
                }
            }
            consider(obj(i, j, s, t), s, t);
        }
    }
    return best;
}

}  // namespace lensrr
