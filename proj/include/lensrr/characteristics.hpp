#pragma once

// BMO seminorms and A_{p1,p2} characteristics, dyadic (exact over the finite
// tree of cubes) and continuous on [0,1] (numerical supremum over intervals).

#include "lensrr/lens.hpp"
#include "lensrr/step_function.hpp"

namespace lensrr {

/// A positive function is in A_{p1,p2} with constant Q when
/// <f^p1>^(1/p1) <f^p2>^(-1/p2) <= Q on every interval.  (1, -1) is A_2.
struct ApParams {
    double p1;
    double p2;
    double Q;

    ApParams(double p1_, double p2_, double Q_);

    [[nodiscard]] static ApParams a2(double Q) { return {1.0, -1.0, Q}; }
    /// Exponent of the lens the class embeds into: q = p2/p1.
    [[nodiscard]] double q() const { return p2 / p1; }
    /// Lens constant: Q^p2 for p2 > 0, Q^-p2 for p2 < 0.
    [[nodiscard]] double lens_constant() const;
    /// Inverse of lens_constant for an arbitrary lens constant.
    [[nodiscard]] double class_constant(double lens_C) const;
};

/// Supremum over intervals with the interval where it is attained.
struct IntervalSup {
    double value;
    double s;
    double t;
};

[[nodiscard]] double dyadic_bmo_seminorm(const ScalarDyadic& f);

[[nodiscard]] IntervalSup continuous_bmo_sup(const ScalarStep& g);
[[nodiscard]] double continuous_bmo_seminorm_1d(const ScalarStep& g);

[[nodiscard]] double ap_characteristic_dyadic(const ScalarDyadic& f, const ApParams& p);

[[nodiscard]] IntervalSup continuous_ap_sup(const ScalarStep& g, const ApParams& p);
[[nodiscard]] double ap_characteristic_continuous_1d(const ScalarStep& g, const ApParams& p);

/// Supremum of the lens gauge over dyadic cube averages, in class scale
/// (sqrt for parabolic lenses).
[[nodiscard]] double lens_characteristic_dyadic(const PlanarDyadic& f, const Lens& lens);

/// Supremum of the lens gauge over interval averages, in class scale.
[[nodiscard]] IntervalSup lens_characteristic_continuous(const PlanarStep& g, const Lens& lens);

/// Supremum of Lens::violation over interval averages (each side searched
/// on its own).
[[nodiscard]] IntervalSup lens_violation_sup(const PlanarStep& g, const Lens& lens);

}  // namespace lensrr
