#pragma once

// Minimal alpha-extensions of the built-in lenses: closed forms, the algebraic
// equation behind the power family, and a brute-force envelope oracle built
// directly from higher segments.

#include "lensrr/lens.hpp"

#include <optional>
#include <vector>

namespace lensrr {

/// eps' = (1 + alpha) eps / (2 sqrt(alpha)).
[[nodiscard]] double min_extension_parabolic(double eps, double alpha);

/// C' = (C (alpha+1)^2 - (alpha-1)^2) / (4 alpha), C >= 1.
[[nodiscard]] double min_extension_a2(double C, double alpha);

/// g(a) = C (alpha a + 1 - alpha)^q - alpha C a^q - (1 - alpha).
[[nodiscard]] double eq2_residual(double C, double q, double alpha, double a);

/// Positive roots of g, ascending.  Throws "root bracketing failed" when the
/// scan finds no sign change.
[[nodiscard]] std::vector<double> solve_eq2(double C, double q, double alpha);

/// 1 - C^{-1/(q-1)} for q > 1: at or below it the extension is unbounded.
[[nodiscard]] double epigraph_threshold(double C, double q);

class PowerExtension {
public:
    static PowerExtension bounded(double constant) { return PowerExtension(true, constant); }
    static PowerExtension epigraph() { return PowerExtension(false, 0.0); }

    [[nodiscard]] bool is_bounded() const { return bounded_; }
    [[nodiscard]] bool is_epigraph() const { return !bounded_; }
    /// Ratio of the free to the fixed coefficient of the extension; throws for
    /// the epigraph case.
    [[nodiscard]] double constant() const;

private:
    PowerExtension(bool b, double c) : bounded_(b), constant_(c) {}
    bool bounded_;
    double constant_;
};

/// Minimal extension of Omega_C^q.  q in (0,1) and q in (-1,0) are conjugated
/// to exponent 1/q and mapped back.
[[nodiscard]] PowerExtension min_extension_power(double C, double q, double alpha);

/// Minimal alpha-extension as a lens sharing the fixed boundary of `lens`.
[[nodiscard]] Lens minimal_extension(const Lens& lens, double alpha);

/// Affine conjugation used for q in (0,1) ((u,v) -> (v/hi, u)) and q in
/// (-1,0) ((u,v) -> (v,u)).  It maps the fixed boundary onto the fixed
/// boundary of a lens with exponent 1/q.
struct Reduction {
    Lens target;
    bool swap_only;
    double scale;

    [[nodiscard]] Point2 forward(const Point2& p) const;
    [[nodiscard]] Point2 backward(const Point2& p) const;
};

[[nodiscard]] std::optional<Reduction> reduction_for(const Lens& lens);

struct HigherSegment {
    Point2 y;  // fixed boundary
    Point2 z;  // first crossing of the free boundary, z = alpha x + (1-alpha) y
    Point2 x;  // second crossing
};

/// Controls the brute-force searches.  Offsets from the anchor are scanned on a
/// log grid; parabolic offsets are measured in units of eps, power offsets as
/// log-ratios.
struct EnvelopeGrid {
    std::vector<double> abscissas;  // empty: a default window is used
    int anchors = 2048;
    int offsets_per_decade = 24;
    double min_offset = 1e-6;
    int check_anchors = 17;
};

/// Higher segment anchored at y = (y1, fixed(y1)) on the given side (+1: x to
/// the right of y).  Empty when the side has none.
[[nodiscard]] std::optional<HigherSegment> find_higher_segment(const Lens& lens, double alpha, double y1,
                                                               int side, const EnvelopeGrid& grid = {});

struct Envelope {
    std::vector<Point2> points;  // abscissas ascending
    /// Some anchor has no higher segment on one side; the minimal extension
    /// then covers the whole domain side of the fixed curve.
    bool unbounded = false;
};

[[nodiscard]] Envelope numeric_envelope(const Lens& lens, double alpha, const EnvelopeGrid& grid = {});

/// Closed-form free boundary ordinate of the minimal extension at x1, for
/// comparison with the envelope.
[[nodiscard]] double extension_boundary(const Lens& lens, double alpha, double x1);

struct ExtensionViolation {
    Point2 y;
    Point2 z;
    Point2 x;
    bool higher;  // x and z both on the free boundary
};

/// Searches the Def-2 pairs (y on the fixed boundary, x on the free boundary)
/// of `inner` for a segment [x, y] leaving `outer`.
[[nodiscard]] std::optional<ExtensionViolation> find_extension_violation(const Lens& inner, const Lens& outer,
                                                                         double alpha,
                                                                         const EnvelopeGrid& grid = {});

[[nodiscard]] bool is_alpha_extension(const Lens& inner, const Lens& outer, double alpha,
                                      const EnvelopeGrid& grid = {});

/// An alpha-extension is also a beta-extension for beta > alpha; returns true
/// iff every beta >= alpha in `betas` passes.
[[nodiscard]] bool extension_holds_for_betas(const Lens& inner, const Lens& outer, double alpha,
                                             const std::vector<double>& betas, const EnvelopeGrid& grid = {});

}  // namespace lensrr
