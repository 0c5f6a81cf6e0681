#include "lensrr/verify.hpp"

#include "lensrr/characteristics.hpp"
#include "lensrr/extension.hpp"
#include "lensrr/filtration.hpp"
#include "lensrr/rearrangement.hpp"
#include "lensrr/witness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

namespace lensrr::verify {

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

using Check = std::function<Outcome(std::uint64_t)>;

struct Property {
    const char* suite;
    const char* name;
    Check check;
};

std::string fmt(double v)
{
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
}

ScalarDyadic random_scalar(std::mt19937_64& rng, int n, int depth, bool positive)
{
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> v(grid::cell_count(n, depth));
    for (auto& x : v) {
        x = positive ? std::exp(normal(rng)) : normal(rng);
    }
    return ScalarDyadic(n, depth, std::move(v));
}

Outcome affine_invariance(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const Lens par = Lens::parabolic(1.0);
    const Lens pows[] = {Lens::power(2.0, -1.0), Lens::power(2.0, 2.0), Lens::power(3.0, 0.5)};
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
        const double x1 = u(rng);
        const Point2 p(x1, x1 * x1 + 1.5 * (u(rng) + 3.0) / 6.0 - 0.25);
        if (par.contains(p) != par.contains(affine_orbit_parabolic(p, u(rng)))) {
            ++bad;
        }
        for (const auto& L : pows) {
            const double y1 = std::exp(u(rng) / 2.0);
            const double g = 0.5 + 2.5 * (u(rng) + 3.0) / 6.0;
            const Point2 q(y1, g * std::pow(y1, L.exponent()));
            if (L.contains(q) != L.contains(affine_orbit_power(q, std::exp(u(rng)), L.exponent()))) {
                ++bad;
            }
        }
    }
    return {bad == 0, std::to_string(bad) + " mismatches in 4000 samples"};
}

Outcome parabolic_monotone(std::uint64_t)
{
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 1; i < 100; ++i) {
        const double a = i / 100.0;
        const double v = min_extension_parabolic(1.0, a);
        if (!(v < prev) || std::abs(min_extension_parabolic(2.5, a) - 2.5 * v) > 1e-12 * v) {
            return {false, "failure at alpha " + fmt(a)};
        }
        prev = v;
    }
    return {true, "strictly decreasing, linear in eps"};
}

Outcome power_matches_a2(std::uint64_t)
{
    double worst = 0.0;
    for (double C : {1.25, 1.5, 2.0, 3.0, 4.0, 8.0}) {
        for (int i = 1; i < 20; ++i) {
            const double a = i / 20.0;
            worst = std::max(worst, std::abs(min_extension_power(C, -1.0, a).constant() - min_extension_a2(C, a)));
        }
    }
    return {worst < 1e-10, "max deviation " + fmt(worst)};
}

Outcome eq2_dichotomy(std::uint64_t)
{
    for (double C : {1.5, 2.0, 4.0}) {
        for (double q : {2.0, 3.0}) {
            const double th = epigraph_threshold(C, q);
            for (double a : {th * 0.5, th, th + 0.5 * (1.0 - th)}) {
                const auto roots = solve_eq2(C, q, a);
                for (double r : roots) {
                    const double rhs = a * C * std::pow(r, q) + (1.0 - a);
                    if (std::abs(eq2_residual(C, q, a, r)) >= 1e-12 * (1.0 + std::abs(rhs))) {
                        return {false, "residual too large"};
                    }
                }
                const std::size_t want = a > th ? 2 : 1;
                if (roots.size() != want || roots.back() <= 1.0) {
                    return {false, "root count at C=" + fmt(C) + " q=" + fmt(q) + " alpha=" + fmt(a)};
                }
            }
        }
    }
    return {true, "residuals and root counts ok"};
}

double envelope_error(const Lens& L, double alpha)
{
    const auto env = numeric_envelope(L, alpha);
    double worst = 0.0;
    for (const auto& p : env.points) {
        const double ref = extension_boundary(L, alpha, p.x());
        worst = std::max(worst, std::abs(p.y() - ref) / std::max(1.0, std::abs(ref)));
    }
    return worst;
}

Outcome envelope_vs_closed_form(std::uint64_t)
{
    double worst = 0.0;
    for (double eps : {0.5, 1.0, 2.0}) {
        for (double a : {0.25, 0.5, 0.75}) {
            worst = std::max(worst, envelope_error(Lens::parabolic(eps), a));
        }
    }
    for (double C : {1.5, 2.0, 4.0}) {
        for (double q : {2.0, 3.0, -1.0, -2.0}) {
            for (double a : {0.25, 0.5, 0.75, 0.9}) {
                if (q > 1.0 && a <= epigraph_threshold(C, q)) {
                    continue;
                }
                worst = std::max(worst, envelope_error(Lens::power(C, q), a));
            }
        }
    }
    return {worst < 1e-6, "max relative deviation " + fmt(worst)};
}

Outcome beta_monotonicity(std::uint64_t)
{
    const std::vector<double> betas{0.55, 0.6, 0.75, 0.9};
    const Lens par = Lens::parabolic(1.0);
    const Lens pw = Lens::power(2.0, -1.0);
    const bool ok = extension_holds_for_betas(par, minimal_extension(par, 0.5), 0.5, betas) &&
                    extension_holds_for_betas(pw, minimal_extension(pw, 0.5), 0.5, betas);
    return {ok, "minimal 1/2-extensions checked at beta in {0.55, 0.6, 0.75, 0.9}"};
}

Outcome reductions(std::uint64_t)
{
    int bad = 0;
    for (const Lens& L : {Lens::power(2.0, 0.5), Lens::power(3.0, -0.5), Lens::power(1.5, 0.25)}) {
        const auto red = reduction_for(L);
        if (!red) {
            return {false, "no reduction for " + L.describe()};
        }
        for (int i = 0; i <= 40; ++i) {
            const double x1 = std::exp(-2.0 + 0.1 * i);
            const Point2 f = red->forward(Point2(x1, L.fixed_curve(x1)));
            const Point2 g = red->forward(Point2(x1, L.free_curve(x1)));
            bad += !red->target.on_fixed_boundary(f) + !red->target.on_free_boundary(g);
            bad += (red->backward(f) - Point2(x1, L.fixed_curve(x1))).norm() > 1e-12 * (1.0 + x1);
        }
    }
    return {bad == 0, std::to_string(bad) + " boundary mismatches"};
}

Outcome rearrangement_distribution(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> depth(0, 4);
    std::uniform_int_distribution<int> dim(1, 2);
    std::uniform_int_distribution<int> small(-3, 3);
    for (int i = 0; i < 1000; ++i) {
        const int n = dim(rng);
        const int k = depth(rng);
        std::vector<double> v(grid::cell_count(n, k));
        for (auto& x : v) {
            x = small(rng);
        }
        const ScalarDyadic f(n, k, v);
        const auto g = monotone_rearrangement(f);
        if (distribution(f) != distribution(g)) {
            return {false, "distribution changed"};
        }
        for (std::size_t p = 1; p < g.pieces(); ++p) {
            if (!(g.values()[p] < g.values()[p - 1])) {
                return {false, "not strictly decreasing after merge"};
            }
        }
        if (n == 1) {
            const auto again = monotone_rearrangement(lift_to_dyadic(g, k));
            if (!std::equal(again.values().begin(), again.values().end(), g.values().begin(), g.values().end()) ||
                !std::equal(again.breakpoints().begin(), again.breakpoints().end(), g.breakpoints().begin(),
                            g.breakpoints().end())) {
                return {false, "not idempotent"};
            }
        }
    }
    return {true, "1000 random functions"};
}

Outcome seminorm_invariances(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const auto f = random_scalar(rng, 1 + i % 2, 3, true);
        std::vector<double> shifted;
        std::vector<double> scaled;
        for (double v : f.values()) {
            shifted.push_back(v + 7.0);
            scaled.push_back(3.0 * v);
        }
        const ScalarDyadic fs(f.dimension(), f.depth(), shifted);
        const ScalarDyadic fm(f.dimension(), f.depth(), scaled);
        worst = std::max(worst, std::abs(dyadic_bmo_seminorm(f) - dyadic_bmo_seminorm(fs)));
        const auto p = ApParams(1.0, -1.0, 1.0);
        worst = std::max(worst, std::abs(ap_characteristic_dyadic(f, p) - ap_characteristic_dyadic(fm, p)) /
                                    ap_characteristic_dyadic(f, p));
    }
    return {worst < 1e-12, "max deviation " + fmt(worst)};
}

Outcome rearrangement_bounds(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    double worst = -1.0;
    for (int n = 1; n <= 2; ++n) {
        const double alpha = std::ldexp(1.0, -n);
        for (int depth = 1; depth <= (n == 1 ? 4 : 3); ++depth) {
            for (int i = 0; i < 20; ++i) {
                const auto f = random_scalar(rng, n, depth, true);
                const auto g = monotone_rearrangement(f);
                const double bmo = continuous_bmo_seminorm_1d(g) - min_extension_parabolic(dyadic_bmo_seminorm(f), alpha);
                const auto p = ApParams::a2(1.0);
                const double a2 =
                    ap_characteristic_continuous_1d(g, p) - min_extension_a2(ap_characteristic_dyadic(f, p), alpha);
                worst = std::max({worst, bmo, a2});
            }
        }
    }
    return {worst <= 1e-9, "largest excess over the sharp bound " + fmt(worst)};
}

Outcome embedding_equivalence(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    int bad = 0;
    for (int i = 0; i < 200; ++i) {
        const int n = 1 + i % 2;
        const auto f = random_scalar(rng, n, 2, true);
        const auto F = dyadic_filtration(n, 2);
        const double s = dyadic_bmo_seminorm(f);
        for (double eps : {0.9 * s, 1.1 * s}) {
            bad += (s <= eps) != membership_in_class_F(embed_bmo(f), F, Lens::parabolic(eps));
        }
        const double q = ap_characteristic_dyadic(f, ApParams::a2(1.0));
        for (double Q : {1.0 + 0.9 * (q - 1.0), 1.0 + 1.1 * (q - 1.0)}) {
            const auto e = embed_ap(f, ApParams::a2(Q));
            bad += (q <= Q) != membership_in_class_F(e.values, F, e.lens);
        }
        const auto lhs = lens_rearrangement(embed_bmo(f), Lens::parabolic(1.0));
        const auto rhs = monotone_rearrangement(f);
        for (std::size_t p = 0; p < rhs.pieces(); ++p) {
            bad += lhs.values()[p] != Point2(rhs.values()[p], rhs.values()[p] * rhs.values()[p]);
        }
    }
    return {bad == 0, std::to_string(bad) + " mismatches"};
}

Outcome lemma_suite(std::uint64_t seed)
{
    int runs = 0;
    for (int n = 1; n <= 2; ++n) {
        const double alpha = std::ldexp(1.0, -n);
        for (int depth = 1; depth <= 3; ++depth) {
            const auto F = dyadic_filtration(n, depth + 1);
            const auto F0 = dyadic_filtration(n, depth);
            for (std::uint64_t s = 0; s < 20; ++s) {
                const Lens lens = s % 2 ? Lens::parabolic(1.0) : Lens::power(2.0, -1.0);
                const auto f = random_class_function(lens, F0, seed + s);
                const auto r = binary_refinement(F, f, lens);
                if (!r.filtration.is_binary() || !is_alpha_filtration(r.filtration, alpha) ||
                    !membership_in_class_F(f, r.filtration, lens) ||
                    is_alpha_martingale_certified(f, F, lens, alpha) != Certificate::certified_yes) {
                    return {false, "failure at n=" + std::to_string(n) + " depth=" + std::to_string(depth)};
                }
                ++runs;
            }
        }
    }
    return {true, std::to_string(runs) + " refinements"};
}

Outcome tower_property(std::uint64_t seed)
{
    const auto F = dyadic_filtration(2, 3);
    const auto f = random_class_function(Lens::parabolic(1.0), dyadic_filtration(2, 2), seed);
    const auto m = generate_martingale(f, F);
    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < F.level_count(); ++k) {
        for (std::size_t i = 0; i < F.levels()[k].size(); ++i) {
            Point2 s = Point2::Zero();
            const int a = F.levels()[k][i].atom;
            for (std::size_t j = 0; j < F.levels()[k + 1].size(); ++j) {
                if (F.levels()[k + 1][j].parent == a) {
                    s += F.atom(F.levels()[k + 1][j].atom).measure * m.levels[k + 1][j];
                }
            }
            worst = std::max(worst, (s / F.atom(a).measure - m.levels[k][i]).norm());
        }
    }
    return {worst < 1e-12, "max tower defect " + fmt(worst)};
}

Outcome bmo_witnesses(std::uint64_t)
{
    double worst = 0.0;
    for (int n = 1; n <= 3; ++n) {
        const auto r = bmo_extremal_witness(1.0, n);
        worst = std::max({worst, std::abs(r.ratio - r.target), std::abs(r.dyadic - 1.0)});
        if (r.worst_s != 0.0) {
            return {false, "worst interval does not start at 0"};
        }
    }
    return {worst < 1e-6, "max deviation " + fmt(worst)};
}

Outcome a2_witnesses(std::uint64_t)
{
    double worst = 0.0;
    for (double Q : {1.5, 2.0, 4.0}) {
        for (int n = 1; n <= 2; ++n) {
            const auto r = a2_extremal_witness(Q, n);
            const double ref = (Q * std::pow(std::ldexp(1.0, n) + 1.0, 2) - std::pow(std::ldexp(1.0, n) - 1.0, 2)) /
                               std::ldexp(1.0, n + 2);
            worst = std::max({worst, std::abs(r.ratio - ref), std::abs(r.dyadic - Q)});
        }
    }
    return {worst < 1e-6, "max deviation " + fmt(worst)};
}

Outcome falsifier_agreement(std::uint64_t)
{
    const auto F = dyadic_filtration(1, 1);
    int bad = 0;
    for (double c : {0.95, 0.99, 1.0, 1.01, 1.05}) {
        const Lens par = Lens::parabolic(1.0);
        const Lens cp = Lens::parabolic(c * min_extension_parabolic(1.0, 0.5));
        bad += theorem1_falsifier(par, cp, 0.5, F).counterexample.has_value() == is_alpha_extension(par, cp, 0.5);
        const Lens pw = Lens::power(2.0, -1.0);
        const Lens cw = Lens::power(c * min_extension_a2(2.0, 0.5), -1.0);
        bad += theorem1_falsifier(pw, cw, 0.5, F).counterexample.has_value() == is_alpha_extension(pw, cw, 0.5);
    }
    return {bad == 0, std::to_string(bad) + " disagreements"};
}

Outcome witness_membership(std::uint64_t)
{
    for (int n = 1; n <= 2; ++n) {
        const auto F = dyadic_filtration(n, 2);
        const auto b = bmo_extremal_witness(1.0, n);
        const auto a = a2_extremal_witness(2.0, n);
        if (!membership_in_class_F(b.witness, F, Lens::parabolic(1.0)) ||
            !membership_in_class_F(a.witness, F, Lens::power(2.0, -1.0))) {
            return {false, "witness outside its class at n=" + std::to_string(n)};
        }
    }
    return {true, "bmo and a2 witnesses in class"};
}

Outcome sampler_bound(std::uint64_t seed)
{
    const auto F = dyadic_filtration(1, 3);
    double worst = -1.0;
    for (std::uint64_t s = 0; s < 200; ++s) {
        const auto fb = random_class_function(Lens::parabolic(1.0), F, seed + s);
        const auto fa = random_class_function(Lens::power(2.0, -1.0), F, seed + s);
        std::vector<double> vb;
        std::vector<double> va;
        for (const auto& p : fb.values()) {
            vb.push_back(p.x());
        }
        for (const auto& p : fa.values()) {
            va.push_back(p.x());
        }
        const auto gb = monotone_rearrangement(ScalarDyadic(1, fb.depth(), vb));
        const auto ga = monotone_rearrangement(ScalarDyadic(1, fa.depth(), va));
        worst = std::max({worst, continuous_bmo_seminorm_1d(gb) - min_extension_parabolic(1.0, 0.5),
                          ap_characteristic_continuous_1d(ga, ApParams::a2(2.0)) - min_extension_a2(2.0, 0.5)});
    }
    return {worst <= 1e-9, "largest excess " + fmt(worst)};
}

const std::vector<Property>& properties()
{
    static const std::vector<Property> all{
        {"geometry", "affine_invariance", affine_invariance},
        {"geometry", "parabolic_extension_monotone", parabolic_monotone},
        {"geometry", "power_q_minus_one_is_a2", power_matches_a2},
        {"geometry", "eq2_residuals_and_dichotomy", eq2_dichotomy},
        {"geometry", "envelope_matches_closed_form", envelope_vs_closed_form},
        {"geometry", "extension_beta_monotone", beta_monotonicity},
        {"geometry", "reductions_map_boundaries", reductions},
        {"spaces", "rearrangement_distribution_idempotence", rearrangement_distribution},
        {"spaces", "seminorm_invariances", seminorm_invariances},
        {"spaces", "rearrangement_sharp_bounds", rearrangement_bounds},
        {"spaces", "embedding_equivalences", embedding_equivalence},
        {"martingales", "binary_refinement_lemma", lemma_suite},
        {"martingales", "tower_property", tower_property},
        {"witnesses", "bmo_attainment", bmo_witnesses},
        {"witnesses", "a2_attainment", a2_witnesses},
        {"witnesses", "falsifier_agreement", falsifier_agreement},
        {"witnesses", "witness_membership", witness_membership},
        {"witnesses", "sampler_sharp_bound", sampler_bound},
    };
    return all;
}

unsigned worker_count(std::size_t jobs)
{
    unsigned n = std::max(1U, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("LENSRR_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) {
            n = std::min(n, static_cast<unsigned>(v));
        }
    }
    return std::min<unsigned>(n, static_cast<unsigned>(std::max<std::size_t>(jobs, 1)));
}

}  // namespace

std::vector<std::string> suite_names() { return {"geometry", "spaces", "martingales", "witnesses", "all"}; }

std::vector<PropertyResult> run_suite(const std::string& suite, std::uint64_t seed)
{
    std::vector<const Property*> selected;
    for (const auto& p : properties()) {
        if (suite == "all" || suite == p.suite) {
            selected.push_back(&p);
        }
    }
    if (selected.empty()) {
        throw Error("unknown suite: " + suite);
    }
    std::vector<PropertyResult> results(selected.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < selected.size(); i = next++) {
            const auto t0 = std::chrono::steady_clock::now();
            Outcome o;
            try {
                o = selected[i]->check(seed);
            } catch (const std::exception& e) {
                o = {false, std::string("error: ") + e.what()};
            }
            const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            results[i] = {selected[i]->suite, selected[i]->name, o.pass, o.detail, dt};
        }
    };
    std::vector<std::thread> pool;
    const unsigned workers = worker_count(selected.size());
    for (unsigned w = 1; w < workers; ++w) {
        pool.emplace_back(work);
    }
    work();
    for (auto& t : pool) {
        t.join();
    }
    return results;
}

void print_table(std::ostream& os, const std::vector<PropertyResult>& results)
{
    for (const auto& r : results) {
        os << std::left << std::setw(12) << r.suite << std::setw(40) << r.name << (r.pass ? "PASS  " : "FAIL  ")
           << std::right << std::fixed << std::setprecision(2) << std::setw(8) << r.seconds << "s  " << r.detail
           << '\n';
        os.unsetf(std::ios::fixed);
    }
}

}  // namespace lensrr::verify
