#include "lensrr/io.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace lensrr;

TEST_CASE("dyadic json round trip")
{
    const ScalarDyadic f(1, 2, {0.1, 1.0 / 3.0, -2.5, 1e-300});
    const auto back = io::dyadic_from_json(io::Json::parse(io::to_json(f).dump()));
    const auto& g = std::get<ScalarDyadic>(back);
    CHECK(g.depth() == 2);
    for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(g[i] == f[i]);
    }

    const PlanarDyadic p(1, 1, {{1.0 / 7.0, 2.0}, {-1.0, 1.0}});
    const auto q = std::get<PlanarDyadic>(io::dyadic_from_json(io::to_json(p)));
    CHECK(q[0] == p[0]);
}

TEST_CASE("step json round trip")
{
    const ScalarStep g({0.0, 0.3, 1.0}, {2.0, 1.0 / 3.0});
    const auto back = std::get<ScalarStep>(io::step_from_json(io::to_json(g)));
    CHECK(back.breakpoints()[1] == 0.3);
    CHECK(back.values()[1] == 1.0 / 3.0);
}

TEST_CASE("malformed input")
{
    CHECK_THROWS_AS((void)io::dyadic_from_json(io::Json::parse(R"({"dimension": 1})")), Error);
    CHECK_THROWS_AS((void)io::dyadic_from_json(io::Json::parse(R"({"dimension": 1, "depth": 1, "values": [1]})")),
                    Error);
    CHECK_THROWS_AS((void)io::dyadic_from_json(io::Json::parse(R"([1, 2])")), Error);

    const auto path = std::filesystem::temp_directory_path() / "lensrr_bad.json";
    {
        std::ofstream os(path);
        os << "{not json";
    }
    CHECK_THROWS_AS((void)io::read_json_file(path.string()), Error);
    std::filesystem::remove(path);
    CHECK_THROWS_AS((void)io::read_json_file("/nonexistent/lensrr.json"), Error);
}

TEST_CASE("filtration and report json")
{
    const auto j = io::to_json(dyadic_filtration(1, 1));
    CHECK(j["levels"][0][0]["parent"].is_null());
    const auto r = io::to_json(bmo_extremal_witness(1.0, 1));
    CHECK(r.contains("ratio"));
    CHECK(r.contains("target"));
}

TEST_CASE("envelope csv and svg")
{
    Envelope env;
    env.points = {Point2(0.0, 1.0), Point2(1.0, 2.0)};
    std::ostringstream os;
    io::write_envelope_csv(os, env);
    CHECK(os.str().rfind("x1,x2\n", 0) == 0);

    std::ostringstream svg;
    io::write_svg(svg, io::PlotData{Lens::parabolic(1.0), Lens::parabolic(1.1), {}, env.points});
    CHECK(svg.str().find("<svg") != std::string::npos);
}
