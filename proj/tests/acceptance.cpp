// Acceptance run: one PASS/FAIL line per criterion.
// Usage: acceptance [path-to-lensrr-cli]

#include "lensrr/characteristics.hpp"
#include "lensrr/extension.hpp"
#include "lensrr/filtration.hpp"
#include "lensrr/rearrangement.hpp"
#include "lensrr/witness.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>

using namespace lensrr;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

std::string cli_path;

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

double corollary1(int n) { return (1.0 + std::ldexp(1.0, n)) / std::pow(2.0, 1.0 + n / 2.0); }

double corollary2(double Q, int n)
{
    const double p = std::ldexp(1.0, n);
    return (Q * (p + 1) * (p + 1) - (p - 1) * (p - 1)) / std::ldexp(1.0, n + 2);
}

// Runs the CLI and returns the "constant" field of its JSON output.
double cli_constant(const std::string& args)
{
    const std::string cmd = cli_path + " constant " + args;
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
    if (!pipe) {
        throw Error("cannot run " + cmd);
    }
    std::string out;
    std::array<char, 256> buf{};
    while (fgets(buf.data(), buf.size(), pipe.get()) != nullptr) {
        out += buf.data();
    }
    return nlohmann::json::parse(out).at("constant").get<double>();
}

std::vector<double> first_coordinates(const PlanarDyadic& f)
{
    std::vector<double> v;
    for (const auto& p : f.values()) {
        v.push_back(p.x());
    }
    return v;
}

Verdict c1()
{
    double worst = 0.0;
    for (int n = 1; n <= 6; ++n) {
        worst = std::max(worst, std::abs(min_extension_parabolic(1.0, std::ldexp(1.0, -n)) - corollary1(n)));
        if (!cli_path.empty()) {
            worst = std::max(worst, std::abs(cli_constant("--class bmo --n " + std::to_string(n)) - corollary1(n)));
        }
    }
    return {worst <= 1e-12, "max error " + fmt(worst) + (cli_path.empty() ? "" : " (library and cli)")};
}

Verdict c2()
{
    double worst = 0.0;
    for (double Q : {1.5, 2.0, 3.0, 4.0, 10.0}) {
        for (int n = 1; n <= 4; ++n) {
            worst = std::max(worst, std::abs(min_extension_a2(Q, std::ldexp(1.0, -n)) - corollary2(Q, n)));
            if (!cli_path.empty()) {
                std::ostringstream args;
                args.precision(17);
                args << "--class a2 --n " << n << " --Q " << Q;
                worst = std::max(worst, std::abs(cli_constant(args.str()) - corollary2(Q, n)));
            }
        }
    }
    const bool exact = min_extension_a2(2.0, 0.5) == 2.125;
    return {worst <= 1e-12 && exact, "max error " + fmt(worst) + ", Q=2 n=1 gives " + fmt(min_extension_a2(2.0, 0.5))};
}

Verdict c3()
{
    std::string detail;
    bool ok = true;
    for (int n = 1; n <= 3; ++n) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto r = bmo_extremal_witness(1.0, n);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool good = std::abs(r.dyadic - 1.0) <= 1e-12 && std::abs(r.ratio - corollary1(n)) <= 1e-6 && secs < 5.0;
        ok = ok && good;
        detail += " n=" + std::to_string(n) + ": dyadic " + fmt(r.dyadic) + " continuous " + fmt(r.ratio) + " (" +
                  fmt(secs) + " s)";
    }
    return {ok, detail};
}

Verdict c4()
{
    bool ok = true;
    double worst = 0.0;
    double slowest = 0.0;
    for (double Q : {1.5, 2.0, 4.0}) {
        for (int n : {1, 2}) {
            const auto t0 = std::chrono::steady_clock::now();
            const auto r = a2_extremal_witness(Q, n);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            const double err = std::abs(r.ratio - corollary2(Q, n));
            ok = ok && err <= 1e-6 && secs < 10.0;
            worst = std::max(worst, err);
            slowest = std::max(slowest, secs);
        }
    }
    return {ok, "max error " + fmt(worst) + ", slowest " + fmt(slowest) + " s"};
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

Verdict c5()
{
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    int cases = 0;
    for (double eps : {0.5, 1.0, 2.0}) {
        for (double a : {0.25, 0.5, 0.75}) {
            worst = std::max(worst, envelope_error(Lens::parabolic(eps), a));
            ++cases;
        }
    }
    for (double C : {1.5, 2.0, 4.0}) {
        for (double q : {2.0, 3.0, -1.0, -2.0}) {
            for (double a : {0.25, 0.5, 0.75, 0.9}) {
                if (q > 1.0 && a <= epigraph_threshold(C, q)) {
                    continue;
                }
                worst = std::max(worst, envelope_error(Lens::power(C, q), a));
                ++cases;
            }
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {worst <= 1e-6 && secs < 60.0,
            std::to_string(cases) + " lenses, max relative deviation " + fmt(worst) + " (" + fmt(secs) + " s)"};
}

Verdict c6()
{
    bool ok = true;
    double worst = 0.0;
    for (double C : {1.5, 2.0, 4.0}) {
        for (double q : {2.0, 3.0}) {
            const double th = epigraph_threshold(C, q);
            for (double a : {0.5 * th, th, th + 0.5 * (1.0 - th)}) {
                const auto roots = solve_eq2(C, q, a);
                for (double r : roots) {
                    worst = std::max(worst, std::abs(eq2_residual(C, q, a, r)));
                }
                // Two roots straddling 1 above the threshold, otherwise one root above 1.
                const bool two = a > th;
                ok = ok && roots.size() == (two ? 2u : 1u) && roots.back() > 1.0 && (!two || roots.front() < 1.0);
            }
        }
    }
    const auto exact = solve_eq2(2.0, 2.0, 0.5);
    ok = ok && worst < 1e-12 && exact.size() == 1 && std::abs(exact[0] - 2.0) <= 1e-12;
    return {ok, "max residual " + fmt(worst) + ", C=2 q=2 alpha=1/2 roots " + std::to_string(exact.size()) +
                    (exact.empty() ? "" : " at " + fmt(exact[0]))};
}

Verdict c7()
{
    // Conjugated q = 1/2 constant against the direct q' = 2 solution, and the
    // boundary of the q' = 2 extension mapped back onto the q = 1/2 one.
    double worst = 0.0;
    int points = 0;
    int epigraphs = 0;
    bool agree = true;
    for (double C : {1.1, 1.2, 1.5, 2.0}) {
        for (double a : {0.6, 0.8, 0.9, 0.95, 0.97}) {
            ++points;
            const auto half = min_extension_power(C, 0.5, a);
            const auto direct = min_extension_power(C * C, 2.0, a);
            if (half.is_epigraph() || direct.is_epigraph()) {
                agree = agree && half.is_epigraph() && direct.is_epigraph();
                ++epigraphs;
                continue;
            }
            worst = std::max(worst, std::abs(half.constant() - std::sqrt(direct.constant())) / half.constant());
            const Lens L = Lens::power(C, 0.5);
            const auto red = reduction_for(L);
            const Lens ext = minimal_extension(L, a);
            const Lens target_ext = minimal_extension(red->target, a);
            for (double u : {0.1, 0.5, 1.0, 3.0, 20.0}) {
                const Point2 p = red->backward(Point2(u, target_ext.free_curve(u)));
                worst = std::max(worst, std::abs(p.y() - ext.free_curve(p.x())) / std::abs(p.y()));
            }
        }
    }
    return {agree && worst <= 1e-8 && points >= 20,
            std::to_string(points) + " points (" + std::to_string(epigraphs) + " epigraph), max relative deviation " +
                fmt(worst)};
}

Verdict c8()
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto F = dyadic_filtration(1, 3);
    const Lens par = Lens::parabolic(1.0);
    const Lens a2 = Lens::power(2.0, -1.0);
    double worst_b = -1.0;
    double worst_a = -1.0;
    int outside = 0;
    for (std::uint64_t s = 0; s < 1000; ++s) {
        const auto fb = random_class_function(par, F, s);
        const auto fa = random_class_function(a2, F, s);
        const auto G = dyadic_filtration(1, fb.depth());
        outside += !membership_in_class_F(fb, G, par) + !membership_in_class_F(fa, G, a2);
        const auto gb = monotone_rearrangement(ScalarDyadic(1, fb.depth(), first_coordinates(fb)));
        const auto ga = monotone_rearrangement(ScalarDyadic(1, fa.depth(), first_coordinates(fa)));
        worst_b = std::max(worst_b, continuous_bmo_seminorm_1d(gb));
        worst_a = std::max(worst_a, ap_characteristic_continuous_1d(ga, ApParams::a2(2.0)));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {outside == 0 && worst_b <= 1.0606602 + 1e-9 && worst_a <= 2.125 + 1e-9 && secs < 300.0,
            "largest BMO " + fmt(worst_b) + ", largest A2 " + fmt(worst_a) + ", " + std::to_string(outside) +
                " samples outside the class (" + fmt(secs) + " s)"};
}

Verdict c9()
{
    const auto F = dyadic_filtration(1, 1);
    const Lens par = Lens::parabolic(1.0);
    const Lens a2 = Lens::power(2.0, -1.0);
    const double e = min_extension_parabolic(1.0, 0.5);
    const double c = min_extension_a2(2.0, 0.5);
    bool ok = true;
    std::string detail;
    auto below = [&](const Lens& L, const Lens& cand, const char* name) {
        const auto r = theorem1_falsifier(L, cand, 0.5, F);
        const bool good = r.counterexample && r.membership && !r.membership->member;
        ok = ok && good;
        detail += std::string(name) + (good ? " counterexample" : " no counterexample") + "; ";
    };
    auto above = [&](const Lens& L, const Lens& cand, const char* name) {
        const bool good = !theorem1_falsifier(L, cand, 0.5, F).counterexample;
        ok = ok && good;
        detail += std::string(name) + (good ? " none found" : " spurious counterexample") + "; ";
    };
    below(par, Lens::parabolic(0.99 * e), "bmo 0.99");
    below(a2, Lens::power(0.99 * c, -1.0), "a2 0.99");
    for (double k : {1.0, 1.001, 1.01, 1.1}) {
        above(par, Lens::parabolic(k * e), ("bmo " + fmt(k)).c_str());
        above(a2, Lens::power(k * c, -1.0), ("a2 " + fmt(k)).c_str());
    }
    return {ok, detail};
}

Verdict c10()
{
    int runs = 0;
    for (int n = 1; n <= 2; ++n) {
        const double alpha = std::ldexp(1.0, -n);
        for (int depth = 1; depth <= 3; ++depth) {
            const auto sampler = dyadic_filtration(n, depth);
            const auto F = dyadic_filtration(n, depth, depth + 1);
            for (std::uint64_t s = 0; s < 100; ++s) {
                const Lens lens = s % 2 ? Lens::parabolic(1.0) : Lens::power(2.0, -1.0);
                const auto f = random_class_function(lens, sampler, 1000 + s);
                const auto r = binary_refinement(F, f, lens);
                bool ok = r.filtration.is_binary() && is_alpha_filtration(r.filtration, alpha) &&
                          membership_in_class_F(f, r.filtration, lens);
                for (std::size_t k = 1; ok && k < r.filtration.level_count(); ++k) {
                    ok = r.filtration.split_atoms(k - 1).size() <= 1;
                }
                ok = ok && is_alpha_martingale_certified(f, F, lens, alpha) == Certificate::certified_yes;
                if (!ok) {
                    return {false, "failure at n=" + std::to_string(n) + " depth=" + std::to_string(depth) +
                                       " seed=" + std::to_string(1000 + s)};
                }
                ++runs;
            }
        }
    }
    return {true, std::to_string(runs) + " refinements certified"};
}

Verdict c11()
{
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> depth(0, 5);
    std::uniform_int_distribution<int> dim(1, 2);
    std::uniform_int_distribution<int> small(-4, 4);
    std::normal_distribution<double> normal(0.0, 1.0);
    int idem = 0;
    for (int i = 0; i < 10000; ++i) {
        const int n = dim(rng);
        const int k = std::min(depth(rng), n == 2 ? 3 : 5);
        std::vector<double> v(grid::cell_count(n, k));
        for (auto& x : v) {
            x = i % 2 ? small(rng) : normal(rng);
        }
        const ScalarDyadic f(n, k, v);
        const auto g = monotone_rearrangement(f);
        if (distribution(f) != distribution(g)) {
            return {false, "distribution changed at sample " + std::to_string(i)};
        }
        for (std::size_t p = 1; p < g.pieces(); ++p) {
            if (!(g.values()[p] < g.values()[p - 1])) {
                return {false, "not decreasing at sample " + std::to_string(i)};
            }
        }
        // Breakpoints of g are multiples of 2^{-nk}, so it lifts exactly.
        const auto again = monotone_rearrangement(lift_to_dyadic(g, n * k));
        if (!std::ranges::equal(again.values(), g.values()) ||
            !std::ranges::equal(again.breakpoints(), g.breakpoints())) {
            return {false, "not idempotent at sample " + std::to_string(i)};
        }
        ++idem;
    }
    return {true, "10000 functions, " + std::to_string(idem) + " idempotence checks"};
}

}  // namespace

int main(int argc, char** argv)
{
    if (argc > 1) {
        cli_path = argv[1];
    }
    const std::vector<std::function<Verdict()>> criteria{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11};
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v{false, ""};
        try {
            v = criteria[i]();
        } catch (const std::exception& e) {
            v = {false, std::string("error: ") + e.what()};
        }
        failures += !v.pass;
        std::cout << "criterion " << i + 1 << ": " << (v.pass ? "PASS" : "FAIL") << "  " << v.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
