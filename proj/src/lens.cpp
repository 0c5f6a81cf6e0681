#include "lensrr/lens.hpp"

#include "lensrr/numeric.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace lensrr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool convex_exponent(double q) { return q > 1.0 || q < 0.0; }

void check_exponent(double q)
{
    if (!std::isfinite(q) || q == 0.0 || q == 1.0) {
        throw Error("power lens exponent must be finite and different from 0 and 1");
    }
}

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Segment::Segment(Point2 p_, Point2 r_) : p(std::move(p_)), r(std::move(r_))
{
    if (!p.allFinite() || !r.allFinite()) {
        throw Error("segment endpoints must be finite");
    }
    if (p == r) {
        throw Error("degenerate segment");
    }
}

Lens Lens::parabolic(double eps)
{
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw Error("parabolic lens needs eps > 0");
    }
    return Lens(ParabolicLens{eps});
}

Lens Lens::power(double C, double q) { return power_band(1.0, C, q); }

Lens Lens::power_band(double lo, double hi, double q)
{
    check_exponent(q);
    if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi)) {
        throw Error("power lens needs 0 < lo < hi (C > 1)");
    }
    return Lens(PowerLens{lo, hi, q});
}

Lens Lens::epigraph(double coeff, double q)
{
    check_exponent(q);
    if (!(coeff > 0.0)) {
        throw Error("epigraph lens needs a positive coefficient");
    }
    return Lens(EpigraphLens{coeff, q});
}

double Lens::exponent() const
{
    return std::visit(Overloaded{[](const ParabolicLens&) { return 2.0; },
                                 [](const PowerLens& l) { return l.q; },
                                 [](const EpigraphLens& l) { return l.q; }},
                      kind_);
}

bool Lens::in_domain(double x1) const { return is_parabolic() ? std::isfinite(x1) : x1 > 0.0; }

double Lens::fixed_curve(double x1) const
{
    return std::visit(Overloaded{[&](const ParabolicLens&) { return x1 * x1; },
                                 [&](const PowerLens& l) {
                                     return (convex_exponent(l.q) ? l.lo : l.hi) * std::pow(x1, l.q);
                                 },
                                 [&](const EpigraphLens& l) { return l.coeff * std::pow(x1, l.q); }},
                      kind_);
}

double Lens::free_curve(double x1) const
{
    return std::visit(Overloaded{[&](const ParabolicLens& l) { return x1 * x1 + l.eps * l.eps; },
                                 [&](const PowerLens& l) {
                                     return (convex_exponent(l.q) ? l.hi : l.lo) * std::pow(x1, l.q);
                                 },
                                 [&](const EpigraphLens&) -> double {
                                     throw Error("epigraph lens has no free boundary");
                                 }},
                      kind_);
}

int Lens::free_side() const { return convex_exponent(exponent()) ? 1 : -1; }

double Lens::gauge(const Point2& p) const
{
    return std::visit(Overloaded{[&](const ParabolicLens&) { return p.y() - p.x() * p.x(); },
                                 [&](const PowerLens& l) {
                                     if (!(p.x() > 0.0)) {
                                         return kInf;
                                     }
                                     if (convex_exponent(l.q)) {
                                         return p.y() / (l.lo * std::pow(p.x(), l.q));
                                     }
                                     return p.y() > 0.0 ? l.hi * std::pow(p.x(), l.q) / p.y() : kInf;
                                 },
                                 [&](const EpigraphLens& l) {
                                     if (!(p.x() > 0.0)) {
                                         return -kInf;
                                     }
                                     if (convex_exponent(l.q)) {
                                         return p.y() / (l.coeff * std::pow(p.x(), l.q));
                                     }
                                     return p.y() > 0.0 ? l.coeff * std::pow(p.x(), l.q) / p.y() : -kInf;
                                 }},
                      kind_);
}

double Lens::fixed_gauge() const { return is_parabolic() ? 0.0 : 1.0; }

double Lens::free_gauge() const
{
    return std::visit(Overloaded{[](const ParabolicLens& l) { return l.eps * l.eps; },
                                 [](const PowerLens& l) { return l.hi / l.lo; },
                                 [](const EpigraphLens&) { return kInf; }},
                      kind_);
}

double Lens::class_scale(double gauge_value) const
{
    return is_parabolic() ? std::sqrt(std::max(gauge_value, 0.0)) : gauge_value;
}

bool Lens::contains(const Point2& p, double tol) const
{
    if (!p.allFinite() || !in_domain(p.x())) {
        return false;
    }
    const double g = gauge(p);
    if (std::isnan(g)) {
        return false;
    }
    if (const auto* l = std::get_if<ParabolicLens>(&kind_)) {
        const double scale = l->eps * l->eps + std::abs(p.y());
        return g >= -tol * scale && g <= l->eps * l->eps + tol * scale;
    }
    return g >= 1.0 - tol && g <= free_gauge() * (1.0 + tol);
}

bool Lens::on_fixed_boundary(const Point2& p, double tol) const
{
    if (!p.allFinite() || !in_domain(p.x())) {
        return false;
    }
    const double g = gauge(p);
    if (const auto* l = std::get_if<ParabolicLens>(&kind_)) {
        return std::abs(g) <= tol * (l->eps * l->eps + std::abs(p.y()));
    }
    return std::abs(g - 1.0) <= tol;
}

bool Lens::on_free_boundary(const Point2& p, double tol) const
{
    if (is_epigraph() || !p.allFinite() || !in_domain(p.x())) {
        return false;
    }
    const double g = gauge(p);
    const double w = free_gauge();
    if (const auto* l = std::get_if<ParabolicLens>(&kind_)) {
        return std::abs(g - w) <= tol * (l->eps * l->eps + std::abs(p.y()));
    }
    return std::abs(g - w) <= tol * w;
}

double Lens::violation(const Point2& p) const
{
    if (!in_domain(p.x())) {
        return kInf;
    }
    const double g = gauge(p);
    if (is_epigraph()) {
        return 1.0 - g;
    }
    const double lo = fixed_gauge();
    const double hi = free_gauge();
    if (is_parabolic()) {
        return std::max(g - hi, lo - g) / hi;
    }
    return std::max((g - hi) / hi, lo - g);
}

bool Lens::same_fixed_boundary(const Lens& other) const
{
    if (is_parabolic() || other.is_parabolic()) {
        return is_parabolic() && other.is_parabolic();
    }
    if (exponent() != other.exponent()) {
        return false;
    }
    // Compare the fixed curve coefficient.
    const double a = fixed_curve(1.0);
    const double b = other.fixed_curve(1.0);
    return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

std::string Lens::describe() const
{
    std::ostringstream os;
    os.precision(17);
    std::visit(Overloaded{[&](const ParabolicLens& l) { os << "parabolic(eps=" << l.eps << ")"; },
                          [&](const PowerLens& l) {
                              os << "power(lo=" << l.lo << ", hi=" << l.hi << ", q=" << l.q << ")";
                          },
                          [&](const EpigraphLens& l) {
                              os << "epigraph(coeff=" << l.coeff << ", q=" << l.q << ")";
                          }},
               kind_);
    return os.str();
}

bool lens_contains(const Lens& lens, const Point2& p) { return lens.contains(p); }

bool segment_in_lens(const Lens& lens, const Segment& s, double tol)
{
    if (!lens.contains(s.p, tol) || !lens.contains(s.r, tol)) {
        return false;
    }
    // The fixed-side constraint is concave along any segment (the domain side
    // of the fixed curve is convex), so the endpoints settle it.  The free
    // side is convex along the segment and needs its interior minimum.
    if (lens.is_epigraph()) {
        return true;
    }
    if (lens.is_parabolic()) {
        const double dx = s.r.x() - s.p.x();
        if (dx == 0.0) {
            return true;
        }
        const double dp = lens.gauge(s.p);
        const double dr = lens.gauge(s.r);
        const double t = std::clamp(0.5 + (dr - dp) / (2.0 * dx * dx), 0.0, 1.0);
        return lens.contains(s.at(t), tol);
    }
    const int side = lens.free_side();
    auto slack = [&](double t) {
        const Point2 pt = s.at(t);
        return -side * (lens.free_curve(pt.x()) - pt.y());
    };
    const auto worst = numeric::golden_max(slack, 0.0, 1.0, 1e-15);
    return lens.contains(s.at(worst.arg), tol);
}

bool segment_in_lens_sampled(const Lens& lens, const Segment& s, int samples)
{
    if (samples < 2) {
        throw Error("segment sampling needs at least 2 samples");
    }
    for (int i = 0; i < samples; ++i) {
        const double t = static_cast<double>(i) / (samples - 1);
        if (!lens.contains(s.at(t))) {
            return false;
        }
    }
    return true;
}

bool is_higher_segment(const Lens& lens, double alpha, const Point2& x, const Point2& y)
{
    if (!(alpha > 0.0 && alpha < 1.0) || lens.is_epigraph()) {
        return false;
    }
    if (!lens.on_fixed_boundary(y) || !lens.on_free_boundary(x) || x == y) {
        return false;
    }
    const Point2 z = alpha * x + (1.0 - alpha) * y;
    if (!lens.on_free_boundary(z)) {
        return false;
    }
    return segment_in_lens(lens, Segment(z, y));
}

Point2 affine_orbit_parabolic(const Point2& p, double t)
{
    return {p.x() + t, p.y() + 2.0 * p.x() * t + t * t};
}

Point2 affine_orbit_power(const Point2& p, double t, double q)
{
    if (!(t > 0.0)) {
        throw Error("power affine orbit needs t > 0");
    }
    return {t * p.x(), std::pow(t, q) * p.y()};
}

}  // namespace lensrr
