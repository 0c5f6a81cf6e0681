#include "lensrr/extension.hpp"

#include "lensrr/numeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace lensrr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_alpha(double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw Error("alpha must lie in (0, 1)");
    }
}

std::vector<double> log_grid(double lo_exp, double hi_exp, int per_decade)
{
    std::vector<double> out;
    const int n = static_cast<int>(std::lround((hi_exp - lo_exp) * per_decade));
    out.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        out.push_back(std::pow(10.0, lo_exp + static_cast<double>(i) / per_decade));
    }
    return out;
}

std::vector<double> eq2_scan_grid()
{
    std::vector<double> grid = log_grid(-8.0, -2.0, 16);
    grid.pop_back();
    auto mid = log_grid(-2.0, 2.0, 256);
    mid.pop_back();
    grid.insert(grid.end(), mid.begin(), mid.end());
    auto hi = log_grid(2.0, 8.0, 16);
    grid.insert(grid.end(), hi.begin(), hi.end());
    return grid;
}

// Offsets scanned away from an anchor: eps units (parabolic) or log-ratio
// (power).
std::vector<double> offset_grid(const Lens& lens, const EnvelopeGrid& grid)
{
    const double hi = lens.is_parabolic() ? 1e6 : std::log(1e8);
    return log_grid(std::log10(grid.min_offset), std::log10(hi), grid.offsets_per_decade);
}

double offset_to_abscissa(const Lens& lens, double y1, int side, double offset)
{
    if (const auto* l = std::get_if<ParabolicLens>(&lens.kind())) {
        return y1 + side * l->eps * offset;
    }
    return y1 * std::exp(side * offset);
}

// Equation (3): q > 1, smaller root.
double eq3(double C, double q, double a)
{
    const double caq = C * std::pow(a, q);
    return std::pow(1.0 - caq, q) * std::pow(q - 1.0, q - 1.0) /
           ((1.0 - a) * std::pow(a - caq, q - 1.0) * std::pow(q, q));
}

// Equation (3b): q <= -1, bigger root.
double eq3b(double C, double q, double a)
{
    const double caq = C * std::pow(a, q);
    return std::pow(a - caq, 1.0 - q) * std::pow(-q, -q) /
           ((a - 1.0) * std::pow(1.0 - caq, -q) * std::pow(1.0 - q, 1.0 - q));
}

struct AnchorSpace {
    bool logarithmic;
    double lo;
    double hi;

    [[nodiscard]] double at(double u) const { return logarithmic ? std::exp(u) : u; }
    [[nodiscard]] double param(double y1) const { return logarithmic ? std::log(y1) : y1; }
};

// Signed ordinate (larger = further out) of segment [y, x] at abscissa s.
double signed_ordinate(const HigherSegment& seg, double s, int free_side)
{
    const double a = std::min(seg.x.x(), seg.y.x());
    const double b = std::max(seg.x.x(), seg.y.x());
    if (s < a || s > b) {
        return -kInf;
    }
    const double t = (s - seg.y.x()) / (seg.x.x() - seg.y.x());
    return free_side * (seg.y.y() + t * (seg.x.y() - seg.y.y()));
}

std::vector<double> check_anchor_abscissas(const Lens& lens, int count)
{
    std::vector<double> out;
    count = std::max(count, 2);
    for (int i = 0; i < count; ++i) {
        const double u = static_cast<double>(i) / (count - 1);
        if (const auto* l = std::get_if<ParabolicLens>(&lens.kind())) {
            out.push_back(l->eps * (-2.0 + 4.0 * u));
        } else {
            out.push_back(std::exp(std::log(0.25) + u * std::log(16.0)));
        }
    }
    return out;
}

}  // namespace

double min_extension_parabolic(double eps, double alpha)
{
    check_alpha(alpha);
    if (!(eps > 0.0)) {
        throw Error("eps must be positive");
    }
    return (1.0 + alpha) * eps / (2.0 * std::sqrt(alpha));
}

double min_extension_a2(double C, double alpha)
{
    check_alpha(alpha);
    if (!(C >= 1.0)) {
        throw Error("A2 constant must be >= 1");
    }
    return (C * (alpha + 1.0) * (alpha + 1.0) - (alpha - 1.0) * (alpha - 1.0)) / (4.0 * alpha);
}

double eq2_residual(double C, double q, double alpha, double a)
{
    return C * std::pow(alpha * a + (1.0 - alpha), q) - alpha * C * std::pow(a, q) - (1.0 - alpha);
}

std::vector<double> solve_eq2(double C, double q, double alpha)
{
    check_alpha(alpha);
    if (q == 0.0) {
        throw Error("q must be nonzero");
    }
    static const std::vector<double> grid = eq2_scan_grid();
    auto g = [&](double a) { return eq2_residual(C, q, alpha, a); };

    std::vector<double> roots;
    double prev_a = grid.front();
    double prev_g = g(prev_a);
    if (prev_g == 0.0) {
        roots.push_back(prev_a);
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double a = grid[i];
        const double ga = g(a);
        if (ga == 0.0) {
            roots.push_back(a);
        } else if (prev_g != 0.0 && (ga < 0.0) != (prev_g < 0.0)) {
            roots.push_back(numeric::bisect(g, prev_a, a, prev_g, ga));
        }
        prev_a = a;
        prev_g = ga;
    }
    if (roots.empty()) {
        throw Error("root bracketing failed");
    }
    for (double a : roots) {
        const double rhs = alpha * C * std::pow(a, q) + (1.0 - alpha);
        if (std::abs(g(a)) >= 1e-12 * (1.0 + std::abs(rhs))) {
            std::ostringstream os;
            os.precision(17);
            os << "eq2 residual check failed at a=" << a;
            throw Error(os.str());
        }
    }
    return roots;
}

double epigraph_threshold(double C, double q)
{
    if (!(q > 1.0)) {
        throw Error("the epigraph threshold is defined for q > 1");
    }
    return 1.0 - std::pow(C, -1.0 / (q - 1.0));
}

double PowerExtension::constant() const
{
    if (!bounded_) {
        throw Error("epigraph extension carries no constant");
    }
    return constant_;
}

PowerExtension min_extension_power(double C, double q, double alpha)
{
    check_alpha(alpha);
    if (q == 0.0 || !std::isfinite(q)) {
        throw Error("q must be finite and nonzero");
    }
    if (q == 1.0) {
        throw Error("q = 1 gives no lens");
    }
    if (!(C >= 1.0)) {
        throw Error("C must be >= 1");
    }
    if (C == 1.0) {
        return PowerExtension::bounded(1.0);
    }
    if (q > 1.0) {
        if (alpha <= epigraph_threshold(C, q)) {
            return PowerExtension::epigraph();
        }
        const auto roots = solve_eq2(C, q, alpha);
        if (roots.size() != 2 || !(roots.front() < 1.0)) {
            throw Error("expected two roots of the extension equation above the threshold");
        }
        return PowerExtension::bounded(eq3(C, q, roots.front()));
    }
    if (q <= -1.0) {
        const auto roots = solve_eq2(C, q, alpha);
        if (roots.size() != 2 || !(roots.back() > 1.0)) {
            throw Error("expected two roots of the extension equation for q <= -1");
        }
        return PowerExtension::bounded(eq3b(C, q, roots.back()));
    }
    const double qp = 1.0 / q;
    if (q > 0.0) {
        // (u,v) -> (v/C, u): Omega_C^q -> Omega_{C^{1/q}}^{1/q}
        const auto inner = min_extension_power(std::pow(C, qp), qp, alpha);
        if (inner.is_epigraph()) {
            return inner;
        }
        return PowerExtension::bounded(std::pow(inner.constant(), q));
    }
    // (u,v) -> (v,u): Omega_C^q -> Omega_{C^{-1/q}}^{1/q}
    const auto inner = min_extension_power(std::pow(C, -qp), qp, alpha);
    return PowerExtension::bounded(std::pow(inner.constant(), -q));
}

Lens minimal_extension(const Lens& lens, double alpha)
{
    if (const auto* l = std::get_if<ParabolicLens>(&lens.kind())) {
        return Lens::parabolic(min_extension_parabolic(l->eps, alpha));
    }
    const auto* l = std::get_if<PowerLens>(&lens.kind());
    if (l == nullptr) {
        throw Error("minimal extension needs a parabolic or power lens");
    }
    const auto ext = min_extension_power(l->hi / l->lo, l->q, alpha);
    const bool convex = lens.free_side() > 0;
    const double fixed = convex ? l->lo : l->hi;
    if (ext.is_epigraph()) {
        return Lens::epigraph(fixed, l->q);
    }
    return convex ? Lens::power_band(l->lo, l->lo * ext.constant(), l->q)
                  : Lens::power_band(l->hi / ext.constant(), l->hi, l->q);
}

Point2 Reduction::forward(const Point2& p) const
{
    return swap_only ? Point2(p.y(), p.x()) : Point2(p.y() / scale, p.x());
}

Point2 Reduction::backward(const Point2& p) const
{
    return swap_only ? Point2(p.y(), p.x()) : Point2(p.y(), scale * p.x());
}

std::optional<Reduction> reduction_for(const Lens& lens)
{
    const auto* l = std::get_if<PowerLens>(&lens.kind());
    if (l == nullptr) {
        return std::nullopt;
    }
    const double qp = 1.0 / l->q;
    if (l->q > 0.0 && l->q < 1.0) {
        return Reduction{Lens::power_band(1.0, std::pow(l->hi / l->lo, qp), qp), false, l->hi};
    }
    if (l->q > -1.0 && l->q < 0.0) {
        return Reduction{Lens::power_band(std::pow(l->lo, -qp), std::pow(l->hi, -qp), qp), true, 1.0};
    }
    return std::nullopt;
}

std::optional<HigherSegment> find_higher_segment(const Lens& lens, double alpha, double y1, int side,
                                                 const EnvelopeGrid& grid)
{
    check_alpha(alpha);
    if (lens.is_epigraph()) {
        throw Error("epigraph lenses have no higher segments");
    }
    if (!lens.in_domain(y1)) {
        throw Error("anchor outside the lens domain");
    }
    const int sigma = lens.free_side();
    const Point2 y(y1, lens.fixed_curve(y1));
    auto make = [&](double offset) {
        const double x1 = offset_to_abscissa(lens, y1, side, offset);
        const Point2 x(x1, lens.free_curve(x1));
        return HigherSegment{y, alpha * x + (1.0 - alpha) * y, x};
    };
    // Positive once z has entered the free domain.
    auto rho = [&](double offset) {
        const auto seg = make(offset);
        return sigma * (seg.z.y() - lens.free_curve(seg.z.x()));
    };

    const auto offsets = offset_grid(lens, grid);
    double prev = offsets.front();
    double r_prev = rho(prev);
    if (!(r_prev < 0.0)) {
        std::ostringstream os;
        os << "offset grid too coarse to bracket the higher segment at anchor " << y1;
        throw Error(os.str());
    }
    for (std::size_t i = 1; i < offsets.size(); ++i) {
        const double r = rho(offsets[i]);
        if (r >= 0.0) {
            const double root = r == 0.0 ? offsets[i] : numeric::bisect(rho, prev, offsets[i], r_prev, r);
            return make(root);
        }
        prev = offsets[i];
        r_prev = r;
    }
    return std::nullopt;
}

Envelope numeric_envelope(const Lens& lens, double alpha, const EnvelopeGrid& grid)
{
    check_alpha(alpha);
    if (lens.is_epigraph()) {
        throw Error("numeric envelope needs a parabolic or power lens");
    }
    std::vector<double> abscissas = grid.abscissas;
    if (abscissas.empty()) {
        for (int i = 0; i <= 10; ++i) {
            if (const auto* l = std::get_if<ParabolicLens>(&lens.kind())) {
                abscissas.push_back(l->eps * (-2.0 + 0.4 * i));
            } else {
                abscissas.push_back(std::exp(std::log(0.5) + 0.1 * i * std::log(4.0)));
            }
        }
    }
    std::sort(abscissas.begin(), abscissas.end());
    for (double s : abscissas) {
        if (!lens.in_domain(s)) {
            throw Error("envelope abscissa outside the lens domain");
        }
    }

    AnchorSpace space{};
    if (const auto* l = std::get_if<ParabolicLens>(&lens.kind())) {
        const double w = 8.0 * l->eps / alpha;
        space = {false, abscissas.front() - w, abscissas.back() + w};
    } else {
        space = {true, std::log(abscissas.front() * 1e-4), std::log(abscissas.back() * 1e4)};
    }

    const int sigma = lens.free_side();
    const int n = std::max(grid.anchors, 3);
    std::vector<double> params(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        params[static_cast<std::size_t>(i)] = space.lo + (space.hi - space.lo) * i / (n - 1);
    }

    Envelope out;
    std::array<std::vector<std::optional<HigherSegment>>, 2> coarse;
    const std::array<int, 2> sides{-1, 1};
    for (std::size_t k = 0; k < 2; ++k) {
        coarse[k].reserve(params.size());
        for (double u : params) {
            coarse[k].push_back(find_higher_segment(lens, alpha, space.at(u), sides[k], grid));
            if (!coarse[k].back()) {
                out.unbounded = true;
            }
        }
    }

    for (double s : abscissas) {
        double best = sigma * lens.free_curve(s);
        for (std::size_t k = 0; k < 2; ++k) {
            double coarse_best = -kInf;
            std::size_t arg = 0;
            for (std::size_t i = 0; i < params.size(); ++i) {
                if (!coarse[k][i]) {
                    continue;
                }
                const double v = signed_ordinate(*coarse[k][i], s, sigma);
                if (v > coarse_best) {
                    coarse_best = v;
                    arg = i;
                }
            }
            if (!std::isfinite(coarse_best)) {
                continue;
            }
            const double lo = params[arg == 0 ? 0 : arg - 1];
            const double hi = params[std::min(arg + 1, params.size() - 1)];
            auto f = [&](double u) {
                const auto seg = find_higher_segment(lens, alpha, space.at(u), sides[k], grid);
                return seg ? signed_ordinate(*seg, s, sigma) : -kInf;
            };
            const auto refined = numeric::golden_max(f, lo, hi, 1e-14);
            best = std::max({best, coarse_best, refined.value});
        }
        out.points.emplace_back(s, sigma * best);
    }
    return out;
}

double extension_boundary(const Lens& lens, double alpha, double x1)
{
    const Lens ext = minimal_extension(lens, alpha);
    if (ext.is_epigraph()) {
        return lens.free_side() * kInf;
    }
    return ext.free_curve(x1);
}

std::optional<ExtensionViolation> find_extension_violation(const Lens& inner, const Lens& outer, double alpha,
                                                           const EnvelopeGrid& grid)
{
    check_alpha(alpha);
    if (inner.is_epigraph()) {
        throw Error("inner lens must be parabolic or power");
    }
    if (!inner.same_fixed_boundary(outer)) {
        throw Error("mismatched fixed boundaries");
    }
    const auto anchors = check_anchor_abscissas(inner, grid.check_anchors);
    for (double y1 : anchors) {
        for (int side : {-1, 1}) {
            if (const auto seg = find_higher_segment(inner, alpha, y1, side, grid)) {
                if (!segment_in_lens(outer, Segment(seg->x, seg->y))) {
                    return ExtensionViolation{seg->y, seg->z, seg->x, true};
                }
            }
        }
    }
    const auto offsets = offset_grid(inner, grid);
    for (double y1 : anchors) {
        const Point2 y(y1, inner.fixed_curve(y1));
        for (int side : {-1, 1}) {
            for (double off : offsets) {
                const double x1 = offset_to_abscissa(inner, y1, side, off);
                const Point2 x(x1, inner.free_curve(x1));
                const Point2 z = alpha * x + (1.0 - alpha) * y;
                if (segment_in_lens(inner, Segment(z, y), 0.0) && !segment_in_lens(outer, Segment(x, y))) {
                    return ExtensionViolation{y, z, x, false};
                }
            }
        }
    }
    return std::nullopt;
}

bool is_alpha_extension(const Lens& inner, const Lens& outer, double alpha, const EnvelopeGrid& grid)
{
    if (inner.is_epigraph()) {
        throw Error("inner lens must be parabolic or power");
    }
    if (!inner.same_fixed_boundary(outer)) {
        throw Error("mismatched fixed boundaries");
    }
    // Extension first: the free boundary of the inner lens must stay inside.
    for (double s : check_anchor_abscissas(inner, grid.check_anchors)) {
        if (!outer.contains(Point2(s, inner.free_curve(s)))) {
            return false;
        }
    }
    return !find_extension_violation(inner, outer, alpha, grid);
}

bool extension_holds_for_betas(const Lens& inner, const Lens& outer, double alpha, const std::vector<double>& betas,
                               const EnvelopeGrid& grid)
{
    for (double beta : betas) {
        if (beta >= alpha && beta < 1.0 && !is_alpha_extension(inner, outer, beta, grid)) {
            return false;
        }
    }
    return true;
}

}  // namespace lensrr
