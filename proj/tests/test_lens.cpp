#include "lensrr/lens.hpp"

#include <doctest.h>

#include <cmath>

using namespace lensrr;

TEST_CASE("lens membership")
{
    const Lens p = Lens::parabolic(1.0);
    CHECK(lens_contains(p, {0.0, 0.5}));
    CHECK_FALSE(lens_contains(p, {0.0, 2.0}));
    CHECK(lens_contains(p, {0.0, 0.0}));
    CHECK(lens_contains(p, {0.0, 1.0}));
    CHECK_FALSE(lens_contains(p, {0.0, -1e-6}));

    const Lens w = Lens::power(2.0, -1.0);
    CHECK(lens_contains(w, {1.0, 1.5}));
    CHECK_FALSE(lens_contains(w, {1.0, 2.5}));
    CHECK_FALSE(lens_contains(w, {1.0, 0.9}));
    CHECK_FALSE(lens_contains(w, {-1.0, -1.5}));

    // 0 < q < 1: the fixed boundary is the upper curve.
    const Lens c = Lens::power(2.0, 0.5);
    CHECK(c.on_fixed_boundary({4.0, 4.0}));
    CHECK(c.on_free_boundary({4.0, 2.0}));
    CHECK(lens_contains(c, {4.0, 3.0}));
    CHECK_FALSE(lens_contains(c, {4.0, 1.5}));
}

TEST_CASE("lens construction errors")
{
    CHECK_THROWS_AS(Lens::parabolic(0.0), Error);
    CHECK_THROWS_AS(Lens::power(1.0, 2.0), Error);
    CHECK_THROWS_AS(Lens::power(2.0, 0.0), Error);
    CHECK_THROWS_AS(Segment(Point2(1, 1), Point2(1, 1)), Error);
}

TEST_CASE("segments in lenses")
{
    const Lens p = Lens::parabolic(1.0);
    CHECK(segment_in_lens(p, Segment({-1.0, 1.0}, {1.0, 1.0})));
    CHECK_FALSE(segment_in_lens(p, Segment({-1.1, 1.21}, {1.1, 1.21})));
    CHECK(segment_in_lens_sampled(p, Segment({-1.0, 1.0}, {1.0, 1.0})));
    CHECK_FALSE(segment_in_lens_sampled(p, Segment({-1.1, 1.21}, {1.1, 1.21})));
    CHECK(segment_in_lens(p, Segment({0.0, 0.5}, {1e-9, 0.5})));

    const Lens w = Lens::power(2.0, -1.0);
    // Hyperbola chord from (s, 1/s) to (u, 1/u): the product peaks at 1 + (s-u)^2/(4su).
    const double s = 2.0 - std::sqrt(2.0);
    const double u = 2.0 + std::sqrt(2.0);
    CHECK(segment_in_lens(w, Segment({s, 1.0 / s}, {u, 1.0 / u})));
    CHECK_FALSE(segment_in_lens(w, Segment({0.9 * s, 1.0 / (0.9 * s)}, {u, 1.0 / u})));
}

TEST_CASE("higher segments")
{
    const Lens p = Lens::parabolic(1.0);
    const double r = std::sqrt(2.0);
    CHECK(is_higher_segment(p, 0.5, {r / 4.0, 9.0 / 8.0}, {-3.0 * r / 4.0, 9.0 / 8.0}));
    CHECK_FALSE(is_higher_segment(p, 0.5, {0.0, 1.0}, {1.0, 1.0}));
    CHECK_FALSE(is_higher_segment(p, 0.5, {r / 4.0, 9.0 / 8.0}, {-3.0 * r / 4.0, 1.2}));
}

TEST_CASE("affine orbits")
{
    const double ep = 1.5;
    const Point2 a = affine_orbit_parabolic({0.0, ep * ep}, 1.0);
    CHECK(a.x() == doctest::Approx(1.0));
    CHECK(a.y() == doctest::Approx(1.0 + ep * ep));
    CHECK(affine_orbit_parabolic({0.3, 0.7}, 0.0) == Point2(0.3, 0.7));
    CHECK(affine_orbit_power({1.0, 2.0}, 2.0, -1.0) == Point2(2.0, 1.0));
    CHECK_THROWS_AS((void)affine_orbit_power({1.0, 2.0}, 0.0, -1.0), Error);
}
