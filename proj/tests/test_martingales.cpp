#include "lensrr/filtration.hpp"
#include "lensrr/witness.hpp"

#include <doctest.h>

using namespace lensrr;

TEST_CASE("dyadic filtrations")
{
    const auto f1 = dyadic_filtration(1, 1);
    REQUIRE(f1.level_count() == 2);
    CHECK(f1.levels()[1].size() == 2);
    CHECK(f1.atom(f1.levels()[1][0].atom).measure == 0.5);

    const auto f2 = dyadic_filtration(2, 1);
    CHECK(f2.levels()[1].size() == 4);
    CHECK(is_alpha_filtration(f2, 0.25));
    CHECK_FALSE(is_alpha_filtration(f2, 0.26));

    const auto f0 = dyadic_filtration(1, 0);
    CHECK(f0.level_count() == 1);
    CHECK(admissible_alphas(f0).empty());

    CHECK(is_alpha_filtration(dyadic_filtration(1, 3), 0.5));
    CHECK_FALSE(is_alpha_filtration(dyadic_filtration(1, 3), 0.51));
    CHECK(is_alpha_filtration(dyadic_filtration(1, 3), 1e-9));
    CHECK_THROWS_AS((void)dyadic_filtration(3, 9), Error);
}

TEST_CASE("admissible ratios")
{
    CHECK(admissible_alphas(dyadic_filtration(1, 2)) == std::vector<double>{0.5});
    CHECK(admissible_alphas(dyadic_filtration(2, 1)) == std::vector<double>{0.25});
    CHECK(union_ratios(dyadic_filtration(2, 1)) == std::vector<double>{0.25, 0.5, 0.75});
}

TEST_CASE("martingale generation")
{
    const auto F = dyadic_filtration(1, 1);
    const auto m = generate_martingale(PlanarDyadic(1, 1, {{1, 1}, {-1, 1}}), F);
    CHECK(m.levels[0][0] == Point2(0, 1));
    CHECK(m.levels[1][1] == Point2(-1, 1));

    const auto c = generate_martingale(PlanarDyadic(1, 2, std::vector<Point2>(4, Point2(2, 4))), F);
    CHECK(c.levels[1][0] == Point2(2, 4));

    CHECK_THROWS_AS((void)generate_martingale(PlanarDyadic(1, 2, {{1, 1}, {0, 0}, {1, 1}, {1, 1}}), F), Error);
    CHECK_THROWS_AS((void)generate_martingale(PlanarDyadic(1, 0, {{1, 1}}), F), Error);
}

TEST_CASE("class membership over a filtration")
{
    const auto b = bmo_extremal_witness(1.0, 1);
    const auto F = dyadic_filtration(1, 2);
    CHECK(membership_in_class_F(b.witness, F, Lens::parabolic(1.0)));
    CHECK_FALSE(membership_in_class_F(b.witness, F, Lens::parabolic(0.999)));
    CHECK(membership_in_class_F(PlanarDyadic(1, 1, {{3, 9}, {3, 9}}), dyadic_filtration(1, 1), Lens::parabolic(1)));
    CHECK_FALSE(membership_in_class_F(PlanarDyadic(1, 1, {{3, 9}, {-3, 9}}), dyadic_filtration(1, 1),
                                      Lens::parabolic(1)));
}

TEST_CASE("binary refinement")
{
    const Lens p = Lens::parabolic(1.0);
    const auto bin = dyadic_filtration(1, 2);
    const auto f = random_class_function(p, dyadic_filtration(1, 1), 3);
    const auto same = binary_refinement(bin, f, p);
    // The second level splits two atoms, one per refined level.
    CHECK(same.filtration.level_count() == 4);
    CHECK(same.index_map == std::vector<std::size_t>{0, 1, 3});

    const auto quad = dyadic_filtration(2, 1);
    const auto g = random_class_function(p, dyadic_filtration(2, 0), 5);
    const auto r = binary_refinement(quad, g, p);
    CHECK(r.filtration.level_count() == 4);
    CHECK(r.index_map == std::vector<std::size_t>{0, 3});
    CHECK(r.filtration.is_binary());
    CHECK(is_alpha_filtration(r.filtration, 0.25));
    CHECK(membership_in_class_F(g, r.filtration, p));
    for (std::size_t k = 1; k < r.filtration.level_count(); ++k) {
        CHECK(r.filtration.split_atoms(k - 1).size() == 1);
    }

    const PlanarDyadic outside(2, 1, {{2, 4}, {2, 4}, {-2, 4}, {-2, 4}});
    CHECK_THROWS_AS((void)binary_refinement(quad, outside, p), Error);
}

TEST_CASE("alpha-martingale certificates")
{
    const Lens p = Lens::parabolic(1.0);
    CHECK(is_alpha_martingale_certified(PlanarDyadic(1, 0, {{0, 0}}), dyadic_filtration(1, 0), p, 0.5) ==
          Certificate::certified_yes);

    const auto f = random_class_function(p, dyadic_filtration(2, 1), 11);
    CHECK(is_alpha_martingale_certified(f, dyadic_filtration(2, 2), p, 0.25) == Certificate::certified_yes);

    // Root split into a quarter and three quarters: the small child's sibling
    // average is close to the root while the segment to the small child leaves
    // the lens.
    std::vector<Atom> atoms{{0, 1.0, {0, 1, 2, 3}}, {1, 0.25, {0}}, {2, 0.75, {1, 2, 3}}};
    const Filtration F(1, 2, atoms, {{{0, -1}}, {{1, 0}, {2, 0}}});
    const PlanarDyadic g(1, 2, {{-1.6, 2.56}, {0.6, 0.36}, {0.6, 0.36}, {0.6, 0.36}});
    CHECK(membership_in_class_F(g, F, p));
    CHECK(is_alpha_martingale_certified(g, F, p, 0.5) == Certificate::certified_no_for_binary);
    CHECK(is_alpha_martingale_certified(g, F, p, 0.25) == Certificate::certified_yes);
}

TEST_CASE("filtration invariants are enforced")
{
    std::vector<Atom> atoms{{0, 1.0, {0, 1}}, {1, 0.5, {0}}, {2, 0.25, {1}}};
    CHECK_THROWS_AS(Filtration(1, 1, atoms, {{{0, -1}}, {{1, 0}, {2, 0}}}), Error);
}
