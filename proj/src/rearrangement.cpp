#include "lensrr/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lensrr {

namespace {

// Sorted cell order; ties keep cell index order.
template <class Key>
std::vector<std::size_t> sorted_cells(std::size_t n, Key key, bool descending)
{
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return descending ? key(a) > key(b) : key(a) < key(b);
    });
    return order;
}

template <class Value, class Equal>
StepFunction1D<Value> assemble(const std::vector<std::size_t>& order, std::span<const Value> values, Equal equal)
{
    const double total = static_cast<double>(order.size());
    std::vector<double> bp{0.0};
    std::vector<Value> out;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const Value& v = values[order[k]];
        if (!out.empty() && equal(out.back(), v)) {
            bp.back() = static_cast<double>(k + 1) / total;
        } else {
            out.push_back(v);
            bp.push_back(static_cast<double>(k + 1) / total);
        }
    }
    bp.back() = 1.0;
    return StepFunction1D<Value>(std::move(bp), std::move(out));
}

}  // namespace

ScalarStep monotone_rearrangement(const ScalarDyadic& f, bool non_increasing)
{
    const auto v = f.values();
    const auto order = sorted_cells(f.size(), [&](std::size_t i) { return v[i]; }, non_increasing);
    return assemble<double>(order, v, [](double a, double b) { return a == b; });
}

PlanarStep lens_rearrangement(const PlanarDyadic& f, const Lens& lens)
{
    const auto v = f.values();
    for (const auto& p : v) {
        if (!lens.on_fixed_boundary(p)) {
            throw Error("lens rearrangement needs values on the fixed boundary");
        }
    }
    const auto order = sorted_cells(f.size(), [&](std::size_t i) { return v[i].x(); }, true);
    return assemble<Point2>(order, v, [](const Point2& a, const Point2& b) { return a == b; });
}

PlanarDyadic embed_bmo(const ScalarDyadic& f)
{
    std::vector<Point2> out;
    out.reserve(f.size());
    for (double v : f.values()) {
        out.emplace_back(v, v * v);
    }
    return PlanarDyadic(f.dimension(), f.depth(), std::move(out));
}

ApEmbedding embed_ap(const ScalarDyadic& f, const ApParams& p)
{
    std::vector<Point2> out;
    out.reserve(f.size());
    const double scale = p.p2 > 0.0 ? 1.0 / p.Q : 1.0;
    for (double v : f.values()) {
        if (!(v > 0.0)) {
            throw Error("A_p embedding needs strictly positive values");
        }
        out.emplace_back(std::pow(scale * v, p.p1), std::pow(v, p.p2));
    }
    return {PlanarDyadic(f.dimension(), f.depth(), std::move(out)), Lens::power(p.lens_constant(), p.q())};
}

Membership membership_in_class(const PlanarStep& g, const Lens& lens)
{
    const auto r = lens_violation_sup(g, lens);
    return {r.value <= kBoundaryTol, r.value, r.s, r.t};
}

}  // namespace lensrr
