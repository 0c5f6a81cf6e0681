#include "lensrr/extension.hpp"

#include <doctest.h>

#include <cmath>

using namespace lensrr;

TEST_CASE("parabolic closed form")
{
    CHECK(min_extension_parabolic(1.0, 0.5) == doctest::Approx(3.0 / (2.0 * std::sqrt(2.0))).epsilon(1e-15));
    CHECK(min_extension_parabolic(2.0, 0.5) == doctest::Approx(1.5 * std::sqrt(2.0)).epsilon(1e-15));
    CHECK(min_extension_parabolic(1.0, 1.0 - 1e-12) == doctest::Approx(1.0));
}

TEST_CASE("a2 closed form")
{
    CHECK(min_extension_a2(2.0, 0.5) == doctest::Approx(2.125).epsilon(1e-15));
    CHECK(min_extension_a2(1.0, 0.3) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(min_extension_a2(3.0, 0.25) == doctest::Approx(4.125).epsilon(1e-15));
    CHECK(min_extension_power(3.0, -1.0, 0.25).constant() == doctest::Approx(4.125).epsilon(1e-12));
}

TEST_CASE("eq2 roots")
{
    const auto r = solve_eq2(2.0, 2.0, 0.75);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == doctest::Approx(1.0 - std::sqrt(2.0 / 3.0)).epsilon(1e-12));
    CHECK(r[1] == doctest::Approx(1.0 + std::sqrt(2.0 / 3.0)).epsilon(1e-12));

    const auto t = solve_eq2(2.0, 2.0, 0.5);
    REQUIRE(t.size() == 1);
    CHECK(std::abs(t[0] - 2.0) < 1e-12);

    const auto near_one = solve_eq2(1.0 + 1e-9, 2.0, 0.75);
    CHECK(std::abs(near_one.front() - 1.0) < 1e-3);
}

TEST_CASE("power extensions")
{
    const auto e = min_extension_power(2.0, 2.0, 0.75);
    REQUIRE(e.is_bounded());
    CHECK(e.constant() == doctest::Approx(2.292886901662352).epsilon(1e-12));
    CHECK(e.constant() > 2.0);
    CHECK(min_extension_power(2.0, -1.0, 0.5).constant() == doctest::Approx(2.125).epsilon(1e-12));
    CHECK(min_extension_power(2.0, 2.0, 0.4).is_epigraph());
    CHECK_THROWS_AS((void)min_extension_power(2.0, 2.0, 0.4).constant(), Error);
    CHECK_THROWS_AS((void)min_extension_power(2.0, 0.0, 0.4), Error);
    CHECK(min_extension_power(1.0, 2.0, 0.4).constant() == 1.0);

    // q in (0,1) is conjugated to 1/q.
    const double direct = min_extension_power(std::pow(2.0, 2.0), 2.0, 0.9).constant();
    CHECK(min_extension_power(2.0, 0.5, 0.75).is_epigraph());
    CHECK(min_extension_power(2.0, 0.5, 0.9).constant() == doctest::Approx(std::sqrt(direct)).epsilon(1e-12));
}

TEST_CASE("numeric envelope")
{
    const auto env = numeric_envelope(Lens::parabolic(1.0), 0.5, {.abscissas = {-0.5, 0.0, 0.5}});
    REQUIRE(env.points.size() == 3);
    CHECK(std::abs(env.points[1].y() - 9.0 / 8.0) < 1e-6);
    CHECK_FALSE(env.unbounded);

    const auto near = numeric_envelope(Lens::parabolic(1.0), 0.999, {.abscissas = {0.0}});
    CHECK(std::abs(near.points[0].y() - 1.0) < 1e-3);

    const auto a2 = numeric_envelope(Lens::power(2.0, -1.0), 0.5);
    double prod = 0.0;
    for (const auto& p : a2.points) {
        prod = std::max(prod, p.x() * p.y());
    }
    CHECK(std::abs(prod - 2.125) < 1e-6);

    CHECK(numeric_envelope(Lens::power(2.0, 2.0), 0.4, {.abscissas = {1.0}}).unbounded);
}

TEST_CASE("alpha extensions")
{
    const Lens p = Lens::parabolic(1.0);
    CHECK(is_alpha_extension(p, Lens::parabolic(1.0607), 0.5));
    CHECK_FALSE(is_alpha_extension(p, Lens::parabolic(1.05), 0.5));
    CHECK(extension_holds_for_betas(p, Lens::parabolic(1.0607), 0.5, {0.6, 0.8}));
    CHECK_THROWS_AS((void)is_alpha_extension(p, Lens::power(2.0, -1.0), 0.5), Error);

    const Lens w = Lens::power(2.0, -1.0);
    CHECK(is_alpha_extension(w, Lens::power(2.13, -1.0), 0.5));
    CHECK_FALSE(is_alpha_extension(w, Lens::power(2.12, -1.0), 0.5));
}

TEST_CASE("reductions")
{
    const Lens L = Lens::power(2.0, 0.5);
    const auto r = reduction_for(L);
    REQUIRE(r.has_value());
    CHECK(r->target.exponent() == doctest::Approx(2.0));
    const Point2 y(3.0, L.fixed_curve(3.0));
    CHECK(r->target.on_fixed_boundary(r->forward(y)));
    CHECK((r->backward(r->forward(y)) - y).norm() < 1e-12);
    CHECK_FALSE(reduction_for(Lens::power(2.0, 2.0)).has_value());
}
