#include "lensrr/witness.hpp"

#include "lensrr/extension.hpp"
#include "lensrr/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>

namespace lensrr {

namespace {

using Chord = std::pair<Point2, Point2>;

Point2 fixed_point(const Lens& lens, double x1) { return {x1, lens.fixed_curve(x1)}; }

Point2 point_with_gauge(const Lens& lens, double x1, double g)
{
    if (lens.is_parabolic()) {
        return {x1, lens.fixed_curve(x1) + g};
    }
    return {x1, lens.free_side() > 0 ? g * lens.fixed_curve(x1) : lens.fixed_curve(x1) / g};
}

// Chord of the fixed boundary with midpoint m.
std::optional<Chord> midpoint_chord(const Lens& lens, const Point2& m)
{
    if (lens.is_parabolic()) {
        const double h = std::sqrt(std::max(lens.gauge(m), 0.0));
        return Chord{fixed_point(lens, m.x() - h), fixed_point(lens, m.x() + h)};
    }
    const int sigma = lens.free_side();
    auto G = [&](double h) {
        return sigma * (m.y() - 0.5 * (lens.fixed_curve(m.x() - h) + lens.fixed_curve(m.x() + h)));
    };
    if (G(0.0) <= 0.0) {
        return Chord{m, m};
    }
    const double hi = m.x() * (1.0 - 1e-15);
    if (!(G(hi) < 0.0)) {
        return std::nullopt;
    }
    const double h = numeric::bisect(G, 0.0, hi);
    return Chord{fixed_point(lens, m.x() - h), fixed_point(lens, m.x() + h)};
}

// Chord of the fixed boundary along the tangent of the free boundary at x.
Chord tangent_chord(const Lens& lens, const Point2& x)
{
    const double slope = lens.is_parabolic() ? 2.0 * x.x() : lens.exponent() * lens.free_curve(x.x()) / x.x();
    const int sigma = lens.free_side();
    auto line = [&](double s) { return Point2(x.x() + s, x.y() + s * slope); };
    auto h = [&](double s) {
        const Point2 p = line(s);
        return sigma * (p.y() - lens.fixed_curve(p.x()));
    };
    auto cross = [&](int dir) {
        const double scale = lens.is_parabolic() ? std::sqrt(lens.free_gauge()) : x.x();
        double inside = 0.0;
        for (int k = 0; k < 200; ++k) {
            double s = 0.0;
            if (dir > 0 || lens.is_parabolic()) {
                s = dir * scale * 1e-3 * std::ldexp(1.0, k);
            } else {
                s = -x.x() * (1.0 - std::ldexp(1.0, -k - 1));
            }
            if (h(s) <= 0.0) {
                return line(numeric::bisect(h, inside, s));
            }
            inside = s;
        }
        throw Error("tangent line does not meet the fixed boundary");
    };
    return {cross(-1), cross(1)};
}

std::optional<std::pair<int, std::vector<int>>> find_union(const Filtration& F, double ratio)
{
    for (std::size_t k = 0; k + 1 < F.level_count(); ++k) {
        for (int w : F.split_atoms(k)) {
            const auto ch = F.children(k, w);
            const double mw = F.atom(w).measure;
            double acc = 0.0;
            for (std::size_t i = 0; i < ch.size(); ++i) {
                acc += F.atom(ch[i]).measure;
                if (std::abs(acc / mw - ratio) <= 1e-12) {
                    return std::make_pair(w, std::vector<int>(ch.begin(), ch.begin() + static_cast<long>(i) + 1));
                }
            }
            if (ch.size() > 20) {
                continue;
            }
            for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << ch.size()); ++mask) {
                double m = 0.0;
                std::vector<int> pick;
                for (std::size_t i = 0; i < ch.size(); ++i) {
                    if (mask >> i & 1U) {
                        m += F.atom(ch[i]).measure;
                        pick.push_back(ch[i]);
                    }
                }
                if (std::abs(m / mw - ratio) <= 1e-12) {
                    return std::make_pair(w, pick);
                }
            }
        }
    }
    return std::nullopt;
}

ScalarDyadic first_coordinate(const PlanarDyadic& f)
{
    std::vector<double> v;
    v.reserve(f.size());
    for (const auto& p : f.values()) {
        v.push_back(p.x());
    }
    return ScalarDyadic(f.dimension(), f.depth(), std::move(v));
}

}  // namespace

PlanarDyadic theorem1_witness(const Lens& lens, const WitnessConfig& cfg, const Filtration& F)
{
    const int n = F.dimension();
    const int g0 = F.grid_depth();
    const Atom& w = F.atom(cfg.omega);
    if ((cfg.x - cfg.y).norm() == 0.0 && (cfg.z - cfg.y).norm() == 0.0) {
        return PlanarDyadic(n, g0, std::vector<Point2>(grid::cell_count(n, g0), cfg.y));
    }
    if (!lens.on_fixed_boundary(cfg.y) || !lens.on_fixed_boundary(cfg.a) || !lens.on_fixed_boundary(cfg.b)) {
        throw Error("witness points y, a, b must lie on the fixed boundary");
    }
    if ((cfg.z - (cfg.alpha * cfg.x + (1.0 - cfg.alpha) * cfg.y)).norm() > 1e-12 * (1.0 + cfg.z.norm())) {
        throw Error("witness needs z = alpha x + (1 - alpha) y");
    }
    std::vector<std::size_t> prime;
    double m_prime = 0.0;
    for (int c : cfg.omega_prime_children) {
        const Atom& a = F.atom(c);
        prime.insert(prime.end(), a.cells.begin(), a.cells.end());
        m_prime += a.measure;
    }
    std::sort(prime.begin(), prime.end());
    if (std::abs(m_prime / w.measure - (1.0 - cfg.alpha)) > 1e-12) {
        throw Error("omega' must carry the fraction 1 - alpha of omega");
    }
    std::vector<std::size_t> rest;
    std::set_difference(w.cells.begin(), w.cells.end(), prime.begin(), prime.end(), std::back_inserter(rest));
    if (rest.size() + prime.size() != w.cells.size()) {
        throw Error("omega' must consist of children of omega");
    }

    double lambda = 1.0;
    const Point2 ab = cfg.a - cfg.b;
    if (ab.squaredNorm() > 0.0) {
        lambda = (cfg.x - cfg.b).dot(ab) / ab.squaredNorm();
    }
    if (lambda < -1e-12 || lambda > 1.0 + 1e-12 ||
        (cfg.x - (lambda * cfg.a + (1.0 - lambda) * cfg.b)).norm() > 1e-9 * (1.0 + cfg.x.norm())) {
        throw Error("x must lie on the segment [a, b]");
    }
    lambda = std::clamp(lambda, 0.0, 1.0);

    for (int extra = 0; extra <= 4; ++extra) {
        const int depth = g0 + extra;
        if (static_cast<long>(n) * depth > 24) {
            break;
        }
        const double count = static_cast<double>(rest.size()) * std::ldexp(1.0, n * extra);
        const double k = lambda * count;
        const bool exact = std::abs(k - std::round(k)) <= 1e-9 * count;
        if (!exact && !(cfg.approximate_proportion && (extra == 4 || static_cast<long>(n) * (depth + 1) > 24))) {
            continue;
        }
        const auto n_a = static_cast<std::size_t>(std::llround(k));
        std::vector<Point2> values(grid::cell_count(n, depth), cfg.y);
        std::size_t seen = 0;
        for (std::size_t cell = 0; cell < values.size(); ++cell) {
            const std::size_t g = grid::ancestor(cell, n, depth, g0);
            if (std::binary_search(rest.begin(), rest.end(), g)) {
                values[cell] = seen++ < n_a ? cfg.a : cfg.b;
            }
        }
        return PlanarDyadic(n, depth, std::move(values));
    }
    throw Error("refine depth: the a/b proportion is not representable on the available cells");
}

WitnessReport bmo_extremal_witness(double eps, int n)
{
    if (n < 1) {
        throw Error("n must be positive");
    }
    const double alpha = std::ldexp(1.0, -n);
    const Lens lens = Lens::parabolic(eps);
    const double x1 = (1.0 - alpha) * eps / (2.0 * std::sqrt(alpha));
    const double y1 = -(1.0 + alpha) * eps / (2.0 * std::sqrt(alpha));
    WitnessConfig cfg;
    cfg.alpha = alpha;
    cfg.x = Point2(x1, x1 * x1 + eps * eps);
    cfg.y = fixed_point(lens, y1);
    cfg.z = alpha * cfg.x + (1.0 - alpha) * cfg.y;
    cfg.a = fixed_point(lens, x1 + eps);
    cfg.b = fixed_point(lens, x1 - eps);
    const Filtration F = dyadic_filtration(n, 1);
    cfg.omega = 0;
    const int kids = 1 << n;
    for (int c = 1; c < kids; ++c) {
        cfg.omega_prime_children.push_back(c);
    }
    const auto phi = theorem1_witness(lens, cfg, F);
    const auto f = first_coordinate(phi);
    const double dyadic = dyadic_bmo_seminorm(f);
    const auto sup = continuous_bmo_sup(monotone_rearrangement(f));
    return {"bmo",
            {{"eps", eps}, {"n", n}, {"alpha", alpha}},
            phi,
            true,
            dyadic,
            lens_rearrangement(phi, lens),
            sup.value,
            sup.value / dyadic,
            min_extension_parabolic(1.0, alpha),
            sup.s,
            sup.t};
}

WitnessReport a2_extremal_witness(double Q, int n)
{
    if (n < 1) {
        throw Error("n must be positive");
    }
    const double alpha = std::ldexp(1.0, -n);
    const Lens lens = Lens::power(Q, -1.0);
    const double a = solve_eq2(Q, -1.0, alpha).back();
    WitnessConfig cfg;
    cfg.alpha = alpha;
    cfg.x = Point2(a, Q / a);
    cfg.y = Point2(1.0, 1.0);
    cfg.z = alpha * cfg.x + (1.0 - alpha) * cfg.y;
    const double r = std::sqrt(1.0 - 1.0 / Q);
    cfg.a = fixed_point(lens, a * (1.0 - r));
    cfg.b = fixed_point(lens, a * (1.0 + r));
    const Filtration F = dyadic_filtration(n, 1);
    cfg.omega = 0;
    const int kids = 1 << n;
    for (int c = 1; c < kids; ++c) {
        cfg.omega_prime_children.push_back(c);
    }
    const auto phi = theorem1_witness(lens, cfg, F);
    const auto f = first_coordinate(phi);
    const auto p = ApParams::a2(Q);
    const double dyadic = ap_characteristic_dyadic(f, p);
    const auto sup = continuous_ap_sup(monotone_rearrangement(f), p);
    return {"a2",
            {{"Q", Q}, {"n", n}, {"alpha", alpha}},
            phi,
            true,
            dyadic,
            lens_rearrangement(phi, lens),
            sup.value,
            sup.value,
            min_extension_a2(Q, alpha),
            sup.s,
            sup.t};
}

FalsifierResult theorem1_falsifier(const Lens& lens, const Lens& candidate, double alpha, const Filtration& F)
{
    const auto choice = find_union(F, 1.0 - alpha);
    if (!choice) {
        throw Error("alpha is not admissible for the filtration");
    }
    if (is_alpha_extension(lens, candidate, alpha)) {
        return {};
    }
    WitnessConfig cfg;
    cfg.alpha = alpha;
    cfg.omega = choice->first;
    cfg.omega_prime_children = choice->second;
    if (const auto v = find_extension_violation(lens, candidate, alpha)) {
        cfg.x = v->x;
        cfg.y = v->y;
        cfg.z = v->z;
    } else {
        // The free boundary itself leaves the candidate: use a point there as x
        // and the fixed point below it as y.
        const Point2 p = [&] {
            for (double s : {0.0, 1.0, -1.0, 0.5, 2.0, -2.0, 0.25, 4.0}) {
                const double x1 = lens.is_parabolic() ? s : std::exp(s);
                const Point2 q(x1, lens.free_curve(x1));
                if (!candidate.contains(q)) {
                    return q;
                }
            }
            throw Error("no free boundary point outside the candidate");
        }();
        cfg.x = p;
        cfg.y = fixed_point(lens, p.x());
        cfg.z = alpha * cfg.x + (1.0 - alpha) * cfg.y;
    }
    auto chord = midpoint_chord(lens, cfg.x);
    if (!chord || !segment_in_lens(lens, Segment(chord->first, chord->second))) {
        chord = tangent_chord(lens, cfg.x);
        cfg.approximate_proportion = true;
    }
    cfg.a = fixed_point(lens, chord->first.x());
    cfg.b = fixed_point(lens, chord->second.x());
    const auto phi = theorem1_witness(lens, cfg, F);
    const auto rearranged = lens_rearrangement(phi, lens);
    const auto member = membership_in_class(rearranged, candidate);
    if (member.member) {
        return {std::nullopt, member};
    }
    const double dyadic = lens_characteristic_dyadic(phi, lens);
    const auto cont = lens_characteristic_continuous(rearranged, lens);
    WitnessReport report{"lens",
                         {{"alpha", alpha}},
                         phi,
                         false,
                         dyadic,
                         rearranged,
                         cont.value,
                         cont.value / dyadic,
                         candidate.class_scale(candidate.free_gauge()),
                         member.s,
                         member.t};
    return {report, member};
}

PlanarDyadic random_class_function(const Lens& lens, const Filtration& F, std::uint64_t seed)
{
    if (lens.is_epigraph()) {
        throw Error("sampler needs a bounded lens");
    }
    const int n = F.dimension();
    const int depth = static_cast<int>(F.level_count()) - 1;
    if (F.grid_depth() != depth) {
        throw Error("sampler needs a dyadic filtration on its own grid");
    }
    for (int j = 0; j <= depth; ++j) {
        if (F.levels()[static_cast<std::size_t>(j)].size() != grid::cell_count(n, j)) {
            throw Error("sampler needs a dyadic filtration");
        }
    }
    const std::size_t out_cells = grid::cell_count(n, depth + 1);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    const bool par = lens.is_parabolic();
    const double G = lens.free_gauge();
    const double g_lo = lens.fixed_gauge();
    const double width = par ? std::sqrt(G) : 0.5;

    auto random_point = [&](double center, double w) {
        const double u = 2.0 * unit(rng) - 1.0;
        const double x1 = par ? center + w * u : center * std::exp(w * u);
        return point_with_gauge(lens, x1, g_lo + (G - g_lo) * unit(rng));
    };

    std::vector<Point2> level{random_point(par ? 0.0 : 1.0, par ? width : 1.0)};
    const std::size_t K = std::size_t{1} << n;
    for (int j = 0; j < depth; ++j) {
        const std::size_t count = grid::cell_count(n, j + 1);
        std::vector<std::vector<std::size_t>> kids(level.size());
        for (std::size_t c = 0; c < count; ++c) {
            kids[grid::ancestor(c, n, j + 1, j)].push_back(c);
        }
        std::vector<Point2> next(count);
        for (std::size_t p = 0; p < level.size(); ++p) {
            const Point2 m = level[p];
            bool done = false;
            for (int attempt = 0; attempt < 10000 && !done; ++attempt) {
                if (attempt % 2 == 0) {
                    const double w = width * std::exp2(-3.0 * unit(rng));
                    Point2 sum = Point2::Zero();
                    bool ok = true;
                    for (std::size_t i = 0; i + 1 < K; ++i) {
                        const Point2 c = random_point(m.x(), w);
                        ok = ok && lens.contains(c, 0.0);
                        next[kids[p][i]] = c;
                        sum += c;
                    }
                    const Point2 last = static_cast<double>(K) * m - sum;
                    if (ok && lens.contains(last, 0.0)) {
                        next[kids[p][K - 1]] = last;
                        done = true;
                    }
                    continue;
                }
                // Local move: zero-mean displacements along the gauge level
                // curve and across it, at a log-uniform scale.  Parents close
                // to the fixed boundary only admit tiny moves.
                const double slope = par ? 2.0 * m.x() : lens.exponent() * m.y() / m.x();
                const double sa = par ? width : 0.5 * m.x();
                const double sb = par ? G : (G - 1.0) * std::abs(m.y());
                const double step = std::exp2(-60.0 * unit(rng));
                std::vector<Point2> d(K);
                Point2 mean = Point2::Zero();
                for (auto& v : d) {
                    const double a = sa * normal(rng);
                    v = Point2(a, a * slope + sb * normal(rng));
                    mean += v / static_cast<double>(K);
                }
                bool ok = true;
                for (std::size_t i = 0; i < K && ok; ++i) {
                    const Point2 c = m + step * (d[i] - mean);
                    ok = lens.contains(c, 0.0);
                    next[kids[p][i]] = c;
                }
                done = ok;
            }
            if (!done) {
                throw Error("rejection budget exceeded at level " + std::to_string(j));
            }
        }
        level = std::move(next);
    }

    std::vector<Point2> values(out_cells);
    std::vector<std::size_t> seen(level.size(), 0);
    for (std::size_t cell = 0; cell < out_cells; ++cell) {
        const std::size_t leaf = grid::ancestor(cell, n, depth + 1, depth);
        const auto chord = midpoint_chord(lens, level[leaf]);
        if (!chord) {
            throw Error("no chord of the fixed boundary through a sampled point");
        }
        values[cell] = seen[leaf]++ < K / 2 ? chord->first : chord->second;
    }
    return PlanarDyadic(n, depth + 1, std::move(values));
}

}  // namespace lensrr
