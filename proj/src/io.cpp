#include "lensrr/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>

namespace lensrr::io {

namespace {

Json point(const Point2& p) { return Json::array({p.x(), p.y()}); }

Point2 parse_point(const Json& v)
{
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw Error("point values must be [x1, x2] pairs of numbers");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

bool planar_values(const Json& values)
{
    if (!values.is_array() || values.empty()) {
        throw Error("values must be a non-empty array");
    }
    return values[0].is_array();
}

std::vector<double> parse_numbers(const Json& values)
{
    std::vector<double> out;
    for (const auto& v : values) {
        if (!v.is_number()) {
            throw Error("values must all be numbers or all be pairs");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<Point2> parse_points(const Json& values)
{
    std::vector<Point2> out;
    for (const auto& v : values) {
        out.push_back(parse_point(v));
    }
    return out;
}

int get_int(const Json& j, const char* key)
{
    if (!j.contains(key) || !j[key].is_number_integer()) {
        throw Error(std::string("missing integer field \"") + key + "\"");
    }
    return j[key].get<int>();
}

template <class V>
Json values_json(std::span<const V> values)
{
    Json arr = Json::array();
    for (const auto& v : values) {
        if constexpr (std::is_same_v<V, double>) {
            arr.push_back(v);
        } else {
            arr.push_back(point(v));
        }
    }
    return arr;
}

}  // namespace

AnyDyadic dyadic_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("values")) {
        throw Error("dyadic step function needs \"n\", \"depth\" and \"values\"");
    }
    const int n = get_int(j, "n");
    const int depth = get_int(j, "depth");
    if (planar_values(j["values"])) {
        return PlanarDyadic(n, depth, parse_points(j["values"]));
    }
    return ScalarDyadic(n, depth, parse_numbers(j["values"]));
}

Json to_json(const ScalarDyadic& f)
{
    return {{"n", f.dimension()}, {"depth", f.depth()}, {"values", values_json(f.values())}};
}

Json to_json(const PlanarDyadic& f)
{
    return {{"n", f.dimension()}, {"depth", f.depth()}, {"values", values_json(f.values())}};
}

AnyStep step_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("breakpoints") || !j.contains("values")) {
        throw Error("step function needs \"breakpoints\" and \"values\"");
    }
    auto bp = parse_numbers(j["breakpoints"]);
    if (planar_values(j["values"])) {
        return PlanarStep(std::move(bp), parse_points(j["values"]));
    }
    return ScalarStep(std::move(bp), parse_numbers(j["values"]));
}

Json to_json(const ScalarStep& g)
{
    return {{"breakpoints", values_json(g.breakpoints())}, {"values", values_json(g.values())}};
}

Json to_json(const PlanarStep& g)
{
    return {{"breakpoints", values_json(g.breakpoints())}, {"values", values_json(g.values())}};
}

Json to_json(const Filtration& F)
{
    Json levels = Json::array();
    for (const auto& level : F.levels()) {
        Json row = Json::array();
        for (const auto& e : level) {
            row.push_back({{"id", e.atom},
                           {"measure", F.atom(e.atom).measure},
                           {"parent", e.parent < 0 ? Json(nullptr) : Json(e.parent)}});
        }
        levels.push_back(std::move(row));
    }
    return {{"levels", levels}};
}

Json to_json(const WitnessReport& r)
{
    Json params = Json::object();
    for (const auto& [k, v] : r.params) {
        params[k] = v;
    }
    Json witness;
    if (r.scalar) {
        std::vector<double> v;
        for (const auto& p : r.witness.values()) {
            v.push_back(p.x());
        }
        witness = to_json(ScalarDyadic(r.witness.dimension(), r.witness.depth(), std::move(v)));
    } else {
        witness = to_json(r.witness);
    }
    return {{"class", r.cls},
            {"params", params},
            {"dyadic", r.dyadic},
            {"continuous", r.continuous},
            {"ratio", r.ratio},
            {"target", r.target},
            {"witness", witness},
            {"worst_interval", {r.worst_s, r.worst_t}}};
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open " + path);
    }
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw Error(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j)
{
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write " + path);
    }
    out << j.dump(2) << '\n';
}

void write_envelope_csv(std::ostream& os, const Envelope& env)
{
    os << "x1,x2\n" << std::setprecision(17);
    for (const auto& p : env.points) {
        os << p.x() << ',' << p.y() << '\n';
    }
}

void write_svg(std::ostream& os, const PlotData& d)
{
    const Lens& L = d.lens;
    const bool par = L.is_parabolic();
    double top_gauge = L.free_gauge();
    if (d.extension && !d.extension->is_epigraph()) {
        top_gauge = d.extension->free_gauge();
    }
    // Abscissa window.
    double xmin = 0.0;
    double xmax = 0.0;
    if (par) {
        const double r = 2.0 * std::sqrt(4.0 * top_gauge);
        xmin = -r;
        xmax = r;
    } else {
        xmin = 0.25;
        xmax = 4.0;
    }
    for (const auto& p : d.envelope) {
        xmin = std::min(xmin, p.x());
        xmax = std::max(xmax, p.x());
    }
    const int samples = 400;
    auto curve = [&](auto&& f) {
        std::vector<Point2> pts;
        for (int i = 0; i <= samples; ++i) {
            const double t = static_cast<double>(i) / samples;
            const double x = par ? xmin + t * (xmax - xmin) : xmin * std::pow(xmax / xmin, t);
            pts.emplace_back(x, f(x));
        }
        return pts;
    };
    const auto fixed = curve([&](double x) { return L.fixed_curve(x); });
    const auto free = curve([&](double x) { return L.free_curve(x); });
    auto limit = [&](double x) {
        if (par) {
            return L.fixed_curve(x) + 4.0 * top_gauge;
        }
        return L.free_side() > 0 ? 4.0 * top_gauge * L.fixed_curve(x) : L.fixed_curve(x) / (4.0 * top_gauge);
    };
    double ymin = std::numeric_limits<double>::infinity();
    double ymax = -ymin;
    for (const auto& pts : {fixed, curve(limit)}) {
        for (const auto& p : pts) {
            ymin = std::min(ymin, p.y());
            ymax = std::max(ymax, p.y());
        }
    }
    ymax = std::min(ymax, ymin + 50.0 * (xmax - xmin) + 1.0);
    const double W = 640.0;
    const double H = 480.0;
    auto sx = [&](double x) { return (x - xmin) / (xmax - xmin) * W; };
    auto sy = [&](double y) { return H - (y - ymin) / (ymax - ymin) * H; };
    auto polyline = [&](const std::vector<Point2>& pts, const char* color, double width) {
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width << "\" points=\"";
        for (const auto& p : pts) {
            if (std::isfinite(p.y()) && p.y() <= ymax * 2.0) {
                os << sx(p.x()) << ',' << sy(p.y()) << ' ';
            }
        }
        os << "\"/>\n";
    };
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& s : d.segments) {
        os << "<line stroke=\"#bbbbbb\" stroke-width=\"0.5\" x1=\"" << sx(s.y.x()) << "\" y1=\"" << sy(s.y.y())
           << "\" x2=\"" << sx(s.x.x()) << "\" y2=\"" << sy(s.x.y()) << "\"/>\n";
    }
    polyline(fixed, "black", 1.5);
    polyline(free, "#1f77b4", 1.5);
    if (d.extension && !d.extension->is_epigraph()) {
        polyline(curve([&](double x) { return d.extension->free_curve(x); }), "#d62728", 1.0);
    }
    if (!d.envelope.empty()) {
        for (const auto& p : d.envelope) {
            os << "<circle r=\"2\" fill=\"#2ca02c\" cx=\"" << sx(p.x()) << "\" cy=\"" << sy(p.y()) << "\"/>\n";
        }
    }
    os << "</svg>\n";
}

}  // namespace lensrr::io
