// lensrr: sharp constants for the monotone rearrangement on dyadic classes.

#include "lensrr/characteristics.hpp"
#include "lensrr/extension.hpp"
#include "lensrr/io.hpp"
#include "lensrr/rearrangement.hpp"
#include "lensrr/verify.hpp"
#include "lensrr/witness.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

using namespace lensrr;
using io::Json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Config {
    std::string cls = "bmo";
    std::string lens = "parabolic";
    int n = 1;
    double eps = 1.0;
    double Q = 2.0;
    double C = 2.0;
    double q = 2.0;
    std::optional<double> alpha;
    double p1 = 1.0;
    double p2 = -1.0;
    std::string input;
    std::string output;
    std::string report;
    std::string csv;
    std::string svg;
    std::uint64_t seed = 1;
    std::string suite = "all";
    bool check = false;
    double tolerance = 1e-6;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double alpha_of(const Config& c)
{
    const double a = c.alpha ? *c.alpha : std::ldexp(1.0, -c.n);
    if (!(a > 0.0 && a < 1.0)) {
        throw UsageError("alpha must lie in (0,1)");
    }
    return a;
}

void print(const Json& j) { std::cout << j.dump(2) << '\n'; }

int cmd_constant(const Config& c)
{
    if (c.n < 1) {
        throw UsageError("--n must be positive");
    }
    const double alpha = alpha_of(c);
    if (c.cls == "bmo") {
        print({{"constant", min_extension_parabolic(1.0, alpha)}});
    } else if (c.cls == "a2") {
        if (!(c.Q >= 1.0)) {
            throw UsageError("--Q must be >= 1");
        }
        print({{"constant", min_extension_a2(c.Q, alpha)}});
    } else if (c.cls == "ap") {
        const ApParams p(c.p1, c.p2, c.Q);
        if (p.q() == 1.0) {
            throw UsageError("p1 = p2 gives no class");
        }
        const double C = p.lens_constant();
        const auto ext = min_extension_power(C, p.q(), alpha);
        if (ext.is_epigraph()) {
            const double qq = p.q() > 1.0 ? p.q() : 1.0 / p.q();
            const double th = epigraph_threshold(std::pow(C, p.q() > 1.0 ? 1.0 : 1.0 / p.q()), qq);
            throw UsageError("alpha = " + std::to_string(alpha) + " is at or below the threshold " +
                             std::to_string(th) + "; the minimal extension is unbounded");
        }
        print({{"constant", p.class_constant(ext.constant())},
               {"lens_constant", ext.constant()},
               {"q", p.q()},
               {"alpha", alpha}});
    } else {
        throw UsageError("--class must be bmo, a2 or ap");
    }
    return kOk;
}

Lens lens_of(const Config& c)
{
    if (c.lens == "parabolic") {
        return Lens::parabolic(c.eps);
    }
    if (c.lens == "power") {
        return Lens::power(c.C, c.q);
    }
    throw UsageError("--lens must be parabolic or power");
}

int cmd_extend(const Config& c)
{
    const Lens L = lens_of(c);
    if (!c.alpha) {
        throw UsageError("--alpha is required");
    }
    const double alpha = alpha_of(c);
    const Lens ext = minimal_extension(L, alpha);
    Json out{{"lens", L.describe()}, {"alpha", alpha}};
    if (ext.is_epigraph()) {
        out["extension"] = "epigraph";
        const double Cq = L.free_side() > 0 ? c.C : std::pow(c.C, 1.0 / c.q);
        out["threshold"] = epigraph_threshold(Cq, L.free_side() > 0 ? c.q : 1.0 / c.q);
        print(out);
        return kOk;
    }
    out["extension"] = "bounded";
    out["constant"] = L.is_parabolic() ? min_extension_parabolic(c.eps, alpha)
                                       : min_extension_power(c.C, c.q, alpha).constant();
    int status = kOk;
    const bool need_envelope = c.check || !c.csv.empty() || !c.svg.empty();
    Envelope env;
    if (need_envelope) {
        env = numeric_envelope(L, alpha);
    }
    if (c.check) {
        double worst = 0.0;
        for (const auto& p : env.points) {
            const double ref = ext.free_curve(p.x());
            worst = std::max(worst, std::abs(p.y() - ref) / std::max(1.0, std::abs(ref)));
        }
        const bool pass = !env.unbounded && worst <= c.tolerance;
        out["check"] = {{"pass", pass}, {"max_deviation", worst}, {"tolerance", c.tolerance}};
        status = pass ? kOk : kFailed;
    }
    if (!c.csv.empty()) {
        std::ofstream f(c.csv);
        if (!f) {
            throw Error("cannot write " + c.csv);
        }
        io::write_envelope_csv(f, env);
    }
    if (!c.svg.empty()) {
        std::ofstream f(c.svg);
        if (!f) {
            throw Error("cannot write " + c.svg);
        }
        io::PlotData d{L, ext, {}, env.points};
        for (const auto& p : env.points) {
            for (int side : {-1, 1}) {
                if (auto s = find_higher_segment(L, alpha, p.x(), side)) {
                    d.segments.push_back(*s);
                }
            }
        }
        io::write_svg(f, d);
    }
    print(out);
    return status;
}

int cmd_rearrange(const Config& c)
{
    if (c.input.empty()) {
        throw UsageError("--input is required");
    }
    const auto any = io::dyadic_from_json(io::read_json_file(c.input));
    const auto* f = std::get_if<ScalarDyadic>(&any);
    if (f == nullptr) {
        throw UsageError("rearrange expects scalar values");
    }
    const auto g = monotone_rearrangement(*f);
    if (!c.output.empty()) {
        io::write_json_file(c.output, io::to_json(g));
    }
    Json rep{{"class", c.cls}};
    if (c.cls == "bmo") {
        const double d = dyadic_bmo_seminorm(*f);
        const auto s = continuous_bmo_sup(g);
        rep["dyadic"] = d;
        rep["continuous"] = s.value;
        rep["ratio"] = d > 0.0 ? Json(s.value / d) : Json(nullptr);
        rep["worst_interval"] = {s.s, s.t};
    } else if (c.cls == "a2" || c.cls == "ap") {
        const ApParams p = c.cls == "a2" ? ApParams::a2(1.0) : ApParams(c.p1, c.p2, 1.0);
        const double d = ap_characteristic_dyadic(*f, p);
        const auto s = continuous_ap_sup(g, p);
        rep["dyadic"] = d;
        rep["continuous"] = s.value;
        rep["ratio"] = s.value / d;
        rep["worst_interval"] = {s.s, s.t};
    } else {
        throw UsageError("--class must be bmo, a2 or ap");
    }
    if (c.output.empty()) {
        rep["rearranged"] = io::to_json(g);
    }
    if (!c.report.empty()) {
        io::write_json_file(c.report, rep);
    }
    print(rep);
    return kOk;
}

int cmd_witness(const Config& c)
{
    if (c.n < 1) {
        throw UsageError("--n must be positive");
    }
    WitnessReport r = [&] {
        if (c.cls == "bmo") {
            return bmo_extremal_witness(c.eps, c.n);
        }
        if (c.cls == "a2") {
            if (!(c.Q > 1.0)) {
                throw UsageError("--Q must be > 1");
            }
            return a2_extremal_witness(c.Q, c.n);
        }
        throw UsageError("--class must be bmo or a2");
    }();
    const Json j = io::to_json(r);
    if (!c.output.empty()) {
        io::write_json_file(c.output, j);
    }
    print(j);
    return std::abs(r.ratio - r.target) <= c.tolerance ? kOk : kFailed;
}

int cmd_verify(const Config& c)
{
    const auto names = verify::suite_names();
    if (std::find(names.begin(), names.end(), c.suite) == names.end()) {
        throw UsageError("unknown suite " + c.suite);
    }
    const auto results = verify::run_suite(c.suite, c.seed);
    verify::print_table(std::cout, results);
    const bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
    std::cout << (ok ? "all properties passed" : "some properties failed") << '\n';
    return ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Sharp constants of the monotone rearrangement on dyadic BMO and Muckenhoupt classes"};
    app.require_subcommand(1);
    Config c;
    double alpha = 0.0;

    auto* constant = app.add_subcommand("constant", "Print the sharp constant for a class");
    constant->add_option("--class", c.cls, "bmo, a2 or ap")->check(CLI::IsMember({"bmo", "a2", "ap"}))->required();
    constant->add_option("--n", c.n, "Dimension of the dyadic grid");
    constant->add_option("--Q", c.Q, "Class constant");
    constant->add_option("--p1", c.p1);
    constant->add_option("--p2", c.p2);
    auto* constant_alpha = constant->add_option("--alpha", alpha, "Overrides 2^-n");

    auto* extend = app.add_subcommand("extend", "Minimal alpha-extension of a lens");
    extend->add_option("--lens", c.lens, "parabolic or power")->check(CLI::IsMember({"parabolic", "power"}));
    extend->add_option("--eps", c.eps);
    extend->add_option("--C", c.C);
    extend->add_option("--q", c.q);
    auto* extend_alpha = extend->add_option("--alpha", alpha)->required();
    extend->add_flag("--check", c.check, "Compare the closed form with the envelope oracle");
    extend->add_option("--tolerance", c.tolerance);
    extend->add_option("--csv", c.csv, "Envelope CSV path");
    extend->add_option("--svg", c.svg, "SVG plot path");

    auto* rearrange = app.add_subcommand("rearrange", "Rearrange a dyadic step function");
    rearrange->add_option("--input", c.input)->required();
    rearrange->add_option("--output", c.output);
    rearrange->add_option("--report", c.report);
    rearrange->add_option("--class", c.cls)->check(CLI::IsMember({"bmo", "a2", "ap"}));
    rearrange->add_option("--p1", c.p1);
    rearrange->add_option("--p2", c.p2);

    auto* witness = app.add_subcommand("witness", "Build an extremal witness");
    witness->add_option("--class", c.cls)->check(CLI::IsMember({"bmo", "a2"}))->required();
    witness->add_option("--n", c.n);
    witness->add_option("--eps", c.eps);
    witness->add_option("--Q", c.Q);
    witness->add_option("--output", c.output);
    witness->add_option("--tolerance", c.tolerance);

    auto* verify = app.add_subcommand("verify", "Run property suites");
    verify->add_option("--suite", c.suite)->check(CLI::IsMember(verify::suite_names()));
    verify->add_option("--seed", c.seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }
    if (constant_alpha->count() > 0 || extend_alpha->count() > 0) {
        c.alpha = alpha;
    }

    try {
        if (constant->parsed()) {
            return cmd_constant(c);
        }
        if (extend->parsed()) {
            return cmd_extend(c);
        }
        if (rearrange->parsed()) {
            return cmd_rearrange(c);
        }
        if (witness->parsed()) {
            return cmd_witness(c);
        }
        return cmd_verify(c);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
}
