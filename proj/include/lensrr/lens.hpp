#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <variant>

namespace lensrr {

using Point2 = Eigen::Vector2d;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Relative band used for boundary membership.
inline constexpr double kBoundaryTol = 1e-9;

struct Segment {
    Point2 p;
    Point2 r;

    Segment(Point2 p_, Point2 r_);
    [[nodiscard]] Point2 at(double t) const { return p + t * (r - p); }
};

/// {x1^2 <= x2 <= x1^2 + eps^2}
struct ParabolicLens {
    double eps;
};

/// {x1 > 0, lo*x1^q <= x2 <= hi*x1^q}.  The fixed boundary is the lower curve
/// when x1^q is convex (q > 1 or q < 0) and the upper curve when 0 < q < 1.
struct PowerLens {
    double lo;
    double hi;
    double q;
};

/// Degenerate extension: everything on the domain side of the fixed curve
/// coeff*x1^q (x1 > 0, and x2 > 0 when the curve is concave).
struct EpigraphLens {
    double coeff;
    double q;
};

class Lens {
public:
    using Kind = std::variant<ParabolicLens, PowerLens, EpigraphLens>;

    static Lens parabolic(double eps);
    /// Omega_C^q = {x1^q <= x2 <= C x1^q}.
    static Lens power(double C, double q);
    static Lens power_band(double lo, double hi, double q);
    static Lens epigraph(double coeff, double q);

    [[nodiscard]] const Kind& kind() const { return kind_; }
    [[nodiscard]] bool is_parabolic() const { return std::holds_alternative<ParabolicLens>(kind_); }
    [[nodiscard]] bool is_power() const { return std::holds_alternative<PowerLens>(kind_); }
    [[nodiscard]] bool is_epigraph() const { return std::holds_alternative<EpigraphLens>(kind_); }

    /// Exponent for power and epigraph lenses.
    [[nodiscard]] double exponent() const;

    [[nodiscard]] bool in_domain(double x1) const;
    [[nodiscard]] double fixed_curve(double x1) const;
    /// Throws for epigraph lenses, which have no free boundary.
    [[nodiscard]] double free_curve(double x1) const;
    /// +1 if the free boundary lies above the fixed one, -1 otherwise.
    [[nodiscard]] int free_side() const;

    /// Scalar coordinate across the lens: x2 - x1^2 for parabolic lenses, the
    /// ratio to the fixed curve for power lenses (>= 1 inside).
    [[nodiscard]] double gauge(const Point2& p) const;
    [[nodiscard]] double fixed_gauge() const;
    /// +inf for epigraph lenses.
    [[nodiscard]] double free_gauge() const;
    /// Gauge converted to the class scale: sqrt for parabolic, identity otherwise.
    [[nodiscard]] double class_scale(double gauge_value) const;

    [[nodiscard]] bool contains(const Point2& p, double tol = kBoundaryTol) const;
    [[nodiscard]] bool on_fixed_boundary(const Point2& p, double tol = kBoundaryTol) const;
    [[nodiscard]] bool on_free_boundary(const Point2& p, double tol = kBoundaryTol) const;

    /// Excess of the gauge beyond the free boundary relative to the band
    /// width; positive means outside.  Lower-side violations are reported
    /// with the same sign convention.
    [[nodiscard]] double violation(const Point2& p) const;

    /// True when both lenses share the same fixed boundary curve.
    [[nodiscard]] bool same_fixed_boundary(const Lens& other) const;

    [[nodiscard]] std::string describe() const;

private:
    explicit Lens(Kind k) : kind_(k) {}
    Kind kind_;
};

[[nodiscard]] bool lens_contains(const Lens& lens, const Point2& p);

/// Exact criterion for the built-in families.
[[nodiscard]] bool segment_in_lens(const Lens& lens, const Segment& s, double tol = kBoundaryTol);

/// Uniform parameter sampling with both endpoints; samples >= 2.
[[nodiscard]] bool segment_in_lens_sampled(const Lens& lens, const Segment& s, int samples = 1024);

[[nodiscard]] bool is_higher_segment(const Lens& lens, double alpha, const Point2& x, const Point2& y);

/// (u1, u2) -> (u1 + t, u2 + 2 u1 t + t^2); preserves every parabolic lens.
[[nodiscard]] Point2 affine_orbit_parabolic(const Point2& p, double t);

/// (u1, u2) -> (t u1, t^q u2), t > 0; preserves every power lens of exponent q.
[[nodiscard]] Point2 affine_orbit_power(const Point2& p, double t, double q);

}  // namespace lensrr
