#include "lensrr/characteristics.hpp"
#include "lensrr/filtration.hpp"
#include "lensrr/rearrangement.hpp"

#include <doctest.h>

#include <cmath>

using namespace lensrr;

TEST_CASE("dyadic step function validation")
{
    CHECK_THROWS_AS(ScalarDyadic(1, 2, {1.0, 2.0}), Error);
    CHECK_THROWS_AS(ScalarDyadic(1, 1, {1.0, NAN}), Error);
    CHECK_THROWS_AS(ScalarStep({0.0, 0.7, 0.5, 1.0}, {1.0, 2.0, 3.0}), Error);
    CHECK_THROWS_AS((void)grid::cell_count(5, 5), Error);
    CHECK(grid::cell_count(2, 3) == 64);
    // Cell (idx0, idx1) = (3, 2) at depth 2 sits in (1, 1) at depth 1.
    CHECK(grid::ancestor(3 + 2 * 4, 2, 2, 1) == 1 + 1 * 2);
}

TEST_CASE("dyadic bmo")
{
    CHECK(dyadic_bmo_seminorm(ScalarDyadic(1, 2, {3, 3, 3, 3})) == 0.0);
    CHECK(dyadic_bmo_seminorm(ScalarDyadic(1, 1, {1, -1})) == doctest::Approx(1.0));
}

TEST_CASE("continuous bmo")
{
    CHECK(continuous_bmo_seminorm_1d(ScalarStep({0.0, 1.0}, {2.0})) == 0.0);
    CHECK(continuous_bmo_seminorm_1d(ScalarStep({0.0, 0.5, 1.0}, {1.0, -1.0})) == doctest::Approx(1.0).epsilon(1e-12));
    // Phase (a) is a lower bound.
    const ScalarStep g({0.0, 0.25, 0.5, 1.0}, {4.0, 1.0, 0.0});
    CHECK(continuous_bmo_seminorm_1d(g) >= std::sqrt(0.25 * 16 + 0.25 - 0.25 * 0.25 * 25) - 1e-12);
}

TEST_CASE("A_p characteristics")
{
    const auto a2 = ApParams::a2(1.0);
    CHECK(ap_characteristic_dyadic(ScalarDyadic(1, 1, {5, 5}), a2) == doctest::Approx(1.0));
    CHECK(ap_characteristic_dyadic(ScalarDyadic(1, 1, {1, 3}), a2) == doctest::Approx(4.0 / 3.0));
    CHECK(ap_characteristic_dyadic(ScalarDyadic(1, 1, {1, 9}), a2) == doctest::Approx(25.0 / 9.0));
    CHECK(ap_characteristic_continuous_1d(ScalarStep({0.0, 0.5, 1.0}, {1.0, 9.0}), a2) ==
          doctest::Approx(25.0 / 9.0).epsilon(1e-12));
    CHECK(ap_characteristic_continuous_1d(ScalarStep({0.0, 1.0}, {2.0}), ApParams(2.0, 1.0, 1.0)) ==
          doctest::Approx(1.0));
    CHECK_THROWS_AS((void)ap_characteristic_dyadic(ScalarDyadic(1, 1, {1, 0}), a2), Error);
    CHECK_THROWS_AS(ApParams(1.0, 2.0, 1.0), Error);
    CHECK_THROWS_AS(ApParams(1.0, 0.0, 1.0), Error);

    // Large exponents stay finite in the log domain.
    const double v = ap_characteristic_dyadic(ScalarDyadic(1, 1, {1e-3, 1e3}), ApParams(40.0, -40.0, 1.0));
    CHECK(std::isfinite(v));
    CHECK(v == doctest::Approx(1e6).epsilon(0.1));
}

TEST_CASE("monotone rearrangement")
{
    const auto c = monotone_rearrangement(ScalarDyadic(1, 2, {2, 2, 2, 2}));
    CHECK(c.pieces() == 1);

    const auto g = monotone_rearrangement(ScalarDyadic(1, 2, {1, 3, 2, 0}));
    REQUIRE(g.pieces() == 4);
    CHECK(g.values()[0] == 3.0);
    CHECK(g.values()[3] == 0.0);
    CHECK(g.breakpoints()[1] == 0.25);

    const auto m = monotone_rearrangement(ScalarDyadic(2, 1, {5, 5, 1, 1}));
    REQUIRE(m.pieces() == 2);
    CHECK(m.breakpoints()[1] == 0.5);

    const auto up = monotone_rearrangement(ScalarDyadic(1, 2, {1, 3, 2, 0}), false);
    CHECK(up.values()[0] == 0.0);
}

TEST_CASE("lens rearrangement")
{
    const Lens p = Lens::parabolic(1.0);
    const PlanarDyadic f(1, 2, {{1, 1}, {-1, 1}, {0, 0}, {0, 0}});
    const auto g = lens_rearrangement(f, p);
    REQUIRE(g.pieces() == 3);
    CHECK(g.values()[0] == Point2(1, 1));
    CHECK(g.values()[1] == Point2(0, 0));
    CHECK(g.length(1) == 0.5);
    CHECK_THROWS_AS((void)lens_rearrangement(PlanarDyadic(1, 1, {{0, 0.5}, {0, 0}}), p), Error);
}

TEST_CASE("embeddings")
{
    const auto e = embed_bmo(ScalarDyadic(1, 1, {2, 0}));
    CHECK(e[0] == Point2(2, 4));
    CHECK(e[1] == Point2(0, 0));

    const auto a = embed_ap(ScalarDyadic(1, 1, {2, 4}), ApParams::a2(3.0));
    CHECK(a.values[0] == Point2(2, 0.5));
    CHECK(a.lens.free_gauge() == doctest::Approx(3.0));
    CHECK(a.lens.exponent() == -1.0);

    const auto one = embed_ap(ScalarDyadic(1, 1, {1, 1}), ApParams(2.0, 0.5, 1.5));
    CHECK(one.lens.on_fixed_boundary(one.values[0] * 1.0));
    CHECK_THROWS_AS((void)embed_ap(ScalarDyadic(1, 1, {1, -1}), ApParams::a2(2.0)), Error);

    // A_{p1,p2} with p2 > 0: the embedded averages obey the lens iff the
    // characteristic is at most Q.
    const ScalarDyadic f(1, 2, {1.0, 2.0, 5.0, 3.0});
    const ApParams p(2.0, 1.0, 1.0);
    const double q = ap_characteristic_dyadic(f, p);
    const auto F = dyadic_filtration(1, 2);
    const auto in = embed_ap(f, ApParams(2.0, 1.0, q * 1.001));
    const auto out = embed_ap(f, ApParams(2.0, 1.0, 1.0 + (q - 1.0) * 0.99));
    CHECK(membership_in_class_F(in.values, F, in.lens));
    CHECK_FALSE(membership_in_class_F(out.values, F, out.lens));
}

TEST_CASE("membership in a lens class")
{
    const Lens p = Lens::parabolic(1.0);
    CHECK(membership_in_class(PlanarStep({0.0, 1.0}, {Point2(2, 4)}), p).member);
    const PlanarStep chord({0.0, 0.5, 1.0}, {Point2(-1.1, 1.21), Point2(1.1, 1.21)});
    const auto m = membership_in_class(chord, p);
    CHECK_FALSE(m.member);
    CHECK(m.s == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(m.t == doctest::Approx(1.0).epsilon(1e-6));
}
