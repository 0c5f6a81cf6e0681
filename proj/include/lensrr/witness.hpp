#pragma once

// Extremal functions: the counterexample construction behind the
// rearrangement theorem, the closed-form BMO and A_2 witnesses, and a random
// sampler of class functions.

#include "lensrr/characteristics.hpp"
#include "lensrr/filtration.hpp"
#include "lensrr/lens.hpp"
#include "lensrr/rearrangement.hpp"
#include "lensrr/step_function.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace lensrr {

/// z = alpha x + (1-alpha) y.  phi = y on omega' and off omega; on the rest
/// of omega it takes the values a and b with average x.
struct WitnessConfig {
    Point2 x;
    Point2 y;
    Point2 z;
    Point2 a;
    Point2 b;
    double alpha;
    int omega;
    std::vector<int> omega_prime_children;
    /// Round the a/b proportion to the finest available cells instead of
    /// failing with "refine depth".
    bool approximate_proportion = false;
};

/// Throws "refine depth" when the a/b proportion needs cells finer than four
/// levels below the filtration grid.
[[nodiscard]] PlanarDyadic theorem1_witness(const Lens& lens, const WitnessConfig& cfg, const Filtration& F);

struct WitnessReport {
    std::string cls;
    std::map<std::string, double> params;
    PlanarDyadic witness;
    bool scalar;  // witness values are embedded scalars; report the first coordinate
    double dyadic;
    PlanarStep rearranged;
    double continuous;
    double ratio;
    double target;
    double worst_s;
    double worst_t;
};

/// alpha = 2^-n.  dyadic = eps, continuous -> (1+alpha) eps / (2 sqrt(alpha)).
[[nodiscard]] WitnessReport bmo_extremal_witness(double eps, int n);

/// alpha = 2^-n.  dyadic = Q; `ratio` is the attained continuous constant.
[[nodiscard]] WitnessReport a2_extremal_witness(double Q, int n);

struct FalsifierResult {
    std::optional<WitnessReport> counterexample;
    /// Membership of the rearranged witness in the candidate class.
    std::optional<Membership> membership;
};

/// Counterexample when `candidate` is not an alpha-extension of `lens`.
[[nodiscard]] FalsifierResult theorem1_falsifier(const Lens& lens, const Lens& candidate, double alpha,
                                                 const Filtration& F);

/// Random element of the class of F (a dyadic filtration), refined one level
/// below the filtration grid so that every value lies on the fixed boundary.
[[nodiscard]] PlanarDyadic random_class_function(const Lens& lens, const Filtration& F, std::uint64_t seed);

}  // namespace lensrr
