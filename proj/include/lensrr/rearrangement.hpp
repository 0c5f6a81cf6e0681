#pragma once

// Monotone rearrangement and the embeddings of BMO and A_{p1,p2} into lens
// classes.

#include "lensrr/characteristics.hpp"
#include "lensrr/lens.hpp"
#include "lensrr/step_function.hpp"

namespace lensrr {

/// Non-increasing by default; equal values are merged.
[[nodiscard]] ScalarStep monotone_rearrangement(const ScalarDyadic& f, bool non_increasing = true);

/// Rearranges plane values lying on the fixed boundary by first coordinate,
/// descending.  Throws for values off the fixed boundary.
[[nodiscard]] PlanarStep lens_rearrangement(const PlanarDyadic& f, const Lens& lens);

/// v -> (v, v^2).
[[nodiscard]] PlanarDyadic embed_bmo(const ScalarDyadic& f);

struct ApEmbedding {
    PlanarDyadic values;
    Lens lens;
};

/// p2 > 0: ((v/Q)^p1, v^p2) into Omega_{Q^p2}^{p2/p1};
/// p2 < 0: (v^p1, v^p2) into Omega_{Q^-p2}^{p2/p1}.
[[nodiscard]] ApEmbedding embed_ap(const ScalarDyadic& f, const ApParams& p);

struct Membership {
    bool member;
    double worst;  // largest violation found; <= 0 inside
    double s;
    double t;
};

[[nodiscard]] Membership membership_in_class(const PlanarStep& g, const Lens& lens);

}  // namespace lensrr
