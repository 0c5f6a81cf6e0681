#include "lensrr/characteristics.hpp"

#include "lensrr/interval_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lensrr {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b)
{
    if (a == kNegInf) {
        return b;
    }
    if (b == kNegInf) {
        return a;
    }
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

void check_positive(std::span<const double> values)
{
    for (double v : values) {
        if (!(v > 0.0)) {
            throw Error("A_p characteristics need strictly positive values");
        }
    }
}

// Variance of interval averages; values are shifted by their mean first.
class VarianceObjective {
public:
    explicit VarianceObjective(const ScalarStep& g) : bp_(g.breakpoints())
    {
        double mean = 0.0;
        for (std::size_t i = 0; i < g.pieces(); ++i) {
            mean += g.length(i) * g.values()[i];
        }
        v_.resize(g.pieces());
        p1_.assign(g.pieces() + 1, 0.0);
        p2_.assign(g.pieces() + 1, 0.0);
        for (std::size_t i = 0; i < g.pieces(); ++i) {
            v_[i] = g.values()[i] - mean;
            p1_[i + 1] = p1_[i] + g.length(i) * v_[i];
            p2_[i + 1] = p2_[i] + g.length(i) * v_[i] * v_[i];
        }
    }

    void prepare(std::size_t, std::size_t) {}

    double operator()(std::size_t i, std::size_t j, double s, double t) const
    {
        if (!(t > s)) {
            return kNegInf;
        }
        if (i == j) {
            return 0.0;
        }
        const double li = bp_[i + 1] - s;
        const double lj = t - bp_[j];
        const double len = li + (bp_[j] - bp_[i + 1]) + lj;
        const double s1 = li * v_[i] + (p1_[j] - p1_[i + 1]) + lj * v_[j];
        const double s2 = li * v_[i] * v_[i] + (p2_[j] - p2_[i + 1]) + lj * v_[j] * v_[j];
        const double m1 = s1 / len;
        return s2 / len - m1 * m1;
    }

private:
    std::span<const double> bp_;
    std::vector<double> v_;
    std::vector<double> p1_;
    std::vector<double> p2_;
};

// log of <f^p1>^(1/p1) <f^p2>^(-1/p2), accumulated in the log domain.
class ApObjective {
public:
    ApObjective(const ScalarStep& g, const ApParams& p) : bp_(g.breakpoints()), p_(p)
    {
        check_positive(g.values());
        lv_.reserve(g.pieces());
        for (double v : g.values()) {
            lv_.push_back(std::log(v));
        }
    }

    void prepare(std::size_t i, std::size_t j)
    {
        if (j == i) {
            inner1_ = kNegInf;
            inner2_ = kNegInf;
            return;
        }
        if (j == i + 1) {
            inner1_ = kNegInf;
            inner2_ = kNegInf;
            return;
        }
        // Add piece j-1 to the running interior sums.
        const std::size_t l = j - 1;
        const double ll = std::log(bp_[l + 1] - bp_[l]);
        inner1_ = log_add(inner1_, ll + p_.p1 * lv_[l]);
        inner2_ = log_add(inner2_, ll + p_.p2 * lv_[l]);
    }

    double operator()(std::size_t i, std::size_t j, double s, double t) const
    {
        if (!(t > s)) {
            return kNegInf;
        }
        if (i == j) {
            return 0.0;
        }
        const double li = bp_[i + 1] - s;
        const double lj = t - bp_[j];
        const double len = li + (bp_[j] - bp_[i + 1]) + lj;
        auto log_mean = [&](double p, double inner) {
            double acc = inner;
            if (li > 0.0) {
                acc = log_add(acc, std::log(li) + p * lv_[i]);
            }
            if (lj > 0.0) {
                acc = log_add(acc, std::log(lj) + p * lv_[j]);
            }
            return acc - std::log(len);
        };
        return log_mean(p_.p1, inner1_) / p_.p1 - log_mean(p_.p2, inner2_) / p_.p2;
    }

private:
    std::span<const double> bp_;
    ApParams p_;
    std::vector<double> lv_;
    double inner1_ = kNegInf;
    double inner2_ = kNegInf;
};

// Normalizes plane values by an affine map preserving the lens gauge, so
// averages are formed near the origin (parabolic) or near unit scale (power).
std::vector<Point2> normalized(std::span<const Point2> values, std::span<const double> weights, const Lens& lens)
{
    std::vector<Point2> out(values.begin(), values.end());
    if (lens.is_parabolic()) {
        double c = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            c += weights[i] * values[i].x();
        }
        for (auto& p : out) {
            p = affine_orbit_parabolic(p, -c);
        }
    } else {
        double lc = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (!(values[i].x() > 0.0)) {
                return out;
            }
            lc += weights[i] * std::log(values[i].x());
        }
        for (auto& p : out) {
            p = affine_orbit_power(p, std::exp(-lc), lens.exponent());
        }
    }
    return out;
}

// Functional of the interval average point.
template <class Functional>
class PointObjective {
public:
    PointObjective(const PlanarStep& g, const Lens& lens, Functional fn) : bp_(g.breakpoints()), fn_(fn)
    {
        std::vector<double> weights(g.pieces());
        for (std::size_t i = 0; i < g.pieces(); ++i) {
            weights[i] = g.length(i);
        }
        v_ = normalized(g.values(), weights, lens);
        prefix_.assign(g.pieces() + 1, Point2::Zero());
        for (std::size_t i = 0; i < g.pieces(); ++i) {
            prefix_[i + 1] = prefix_[i] + g.length(i) * v_[i];
        }
    }

    void prepare(std::size_t, std::size_t) {}

    double operator()(std::size_t i, std::size_t j, double s, double t) const
    {
        if (!(t > s)) {
            return kNegInf;
        }
        if (i == j) {
            return fn_(v_[i]);
        }
        const double li = bp_[i + 1] - s;
        const double lj = t - bp_[j];
        const double len = li + (bp_[j] - bp_[i + 1]) + lj;
        const Point2 sum = li * v_[i] + (prefix_[j] - prefix_[i + 1]) + lj * v_[j];
        return fn_(Point2(sum / len));
    }

private:
    std::span<const double> bp_;
    Functional fn_;
    std::vector<Point2> v_;
    std::vector<Point2> prefix_;
};

template <class Functional>
PointObjective<Functional> point_objective(const PlanarStep& g, const Lens& lens, Functional fn)
{
    return PointObjective<Functional>(g, lens, fn);
}

}  // namespace

ApParams::ApParams(double p1_, double p2_, double Q_) : p1(p1_), p2(p2_), Q(Q_)
{
    if (!(p1 > p2) || p1 == 0.0 || p2 == 0.0 || !std::isfinite(p1) || !std::isfinite(p2)) {
        throw Error("A_{p1,p2} needs p1 > p2 and p1*p2 != 0");
    }
    if (!(Q >= 1.0)) {
        throw Error("A_{p1,p2} constant must be >= 1");
    }
}

double ApParams::lens_constant() const { return std::pow(Q, p2 > 0.0 ? p2 : -p2); }

double ApParams::class_constant(double lens_C) const { return std::pow(lens_C, 1.0 / (p2 > 0.0 ? p2 : -p2)); }

double dyadic_bmo_seminorm(const ScalarDyadic& f)
{
    // Per cube: mean and variance, merged upward with equal child weights.
    const int n = f.dimension();
    std::vector<double> mean(f.values().begin(), f.values().end());
    std::vector<double> var(mean.size(), 0.0);
    double sup = 0.0;
    const double children = static_cast<double>(std::size_t{1} << n);
    for (int j = f.depth(); j > 0; --j) {
        const std::size_t parents = grid::cell_count(n, j - 1);
        std::vector<double> pm(parents, 0.0);
        std::vector<double> pv(parents, 0.0);
        for (std::size_t c = 0; c < mean.size(); ++c) {
            pm[grid::ancestor(c, n, j, j - 1)] += mean[c];
        }
        for (auto& m : pm) {
            m /= children;
        }
        for (std::size_t c = 0; c < mean.size(); ++c) {
            const std::size_t p = grid::ancestor(c, n, j, j - 1);
            const double d = mean[c] - pm[p];
            pv[p] += var[c] + d * d;
        }
        for (auto& v : pv) {
            v /= children;
            sup = std::max(sup, v);
        }
        mean = std::move(pm);
        var = std::move(pv);
    }
    return std::sqrt(sup);
}

IntervalSup continuous_bmo_sup(const ScalarStep& g)
{
    VarianceObjective obj(g);
    auto r = maximize_over_intervals(g.breakpoints(), obj, 1e-12);
    r.value = std::sqrt(std::max(r.value, 0.0));
    return r;
}

double continuous_bmo_seminorm_1d(const ScalarStep& g) { return continuous_bmo_sup(g).value; }

double ap_characteristic_dyadic(const ScalarDyadic& f, const ApParams& p)
{
    check_positive(f.values());
    const int n = f.dimension();
    // log <f^p> per cube for both exponents.
    std::vector<double> l1(f.size());
    std::vector<double> l2(f.size());
    for (std::size_t c = 0; c < f.size(); ++c) {
        const double lv = std::log(f[c]);
        l1[c] = p.p1 * lv;
        l2[c] = p.p2 * lv;
    }
    double sup = 0.0;
    const double log_children = n * std::log(2.0);
    for (int j = f.depth(); j > 0; --j) {
        const std::size_t parents = grid::cell_count(n, j - 1);
        std::vector<double> m1(parents, kNegInf);
        std::vector<double> m2(parents, kNegInf);
        for (std::size_t c = 0; c < l1.size(); ++c) {
            const std::size_t par = grid::ancestor(c, n, j, j - 1);
            m1[par] = log_add(m1[par], l1[c]);
            m2[par] = log_add(m2[par], l2[c]);
        }
        for (std::size_t k = 0; k < parents; ++k) {
            m1[k] -= log_children;
            m2[k] -= log_children;
            sup = std::max(sup, m1[k] / p.p1 - m2[k] / p.p2);
        }
        l1 = std::move(m1);
        l2 = std::move(m2);
    }
    return std::exp(sup);
}

IntervalSup continuous_ap_sup(const ScalarStep& g, const ApParams& p)
{
    ApObjective obj(g, p);
    auto r = maximize_over_intervals(g.breakpoints(), obj, 1e-12);
    r.value = std::exp(std::max(r.value, 0.0));
    return r;
}

double ap_characteristic_continuous_1d(const ScalarStep& g, const ApParams& p) { return continuous_ap_sup(g, p).value; }

double lens_characteristic_dyadic(const PlanarDyadic& f, const Lens& lens)
{
    std::vector<double> weights(f.size(), f.cell_measure());
    const auto values = normalized(f.values(), weights, lens);
    const PlanarDyadic g(f.dimension(), f.depth(), values);
    double sup = -std::numeric_limits<double>::infinity();
    for (const auto& level : grid::level_averages(g)) {
        for (const auto& a : level) {
            sup = std::max(sup, lens.gauge(a));
        }
    }
    return lens.class_scale(sup);
}

IntervalSup lens_characteristic_continuous(const PlanarStep& g, const Lens& lens)
{
    auto obj = point_objective(g, lens, [&lens](const Point2& a) { return lens.gauge(a); });
    auto r = maximize_over_intervals(g.breakpoints(), obj, 1e-12);
    r.value = lens.class_scale(r.value);
    return r;
}

IntervalSup lens_violation_sup(const PlanarStep& g, const Lens& lens)
{
    // The two sides are searched separately: their maximum has a ridge along
    // the fixed boundary that traps coordinate ascent.
    const double lo = lens.fixed_gauge();
    const double hi = lens.free_gauge();
    const double lo_scale = lens.is_parabolic() ? hi : 1.0;
    auto lower = point_objective(g, lens, [&](const Point2& a) { return (lo - lens.gauge(a)) / lo_scale; });
    auto best = maximize_over_intervals(g.breakpoints(), lower, 1e-12);
    if (!lens.is_epigraph()) {
        auto upper = point_objective(g, lens, [&](const Point2& a) { return (lens.gauge(a) - hi) / hi; });
        const auto r = maximize_over_intervals(g.breakpoints(), upper, 1e-12);
        if (r.value > best.value) {
            best = r;
        }
    }
    return best;
}

}  // namespace lensrr
