#include "lensrr/step_function.hpp"

#include <algorithm>
#include <cmath>

namespace lensrr {

namespace {

bool finite_value(double v) { return std::isfinite(v); }
bool finite_value(const Point2& p) { return p.allFinite(); }

Distribution merge_sorted(std::vector<std::pair<double, double>> pairs)
{
    std::sort(pairs.begin(), pairs.end());
    Distribution out;
    for (const auto& [v, m] : pairs) {
        if (!out.empty() && out.back().first == v) {
            out.back().second += m;
        } else {
            out.emplace_back(v, m);
        }
    }
    return out;
}

}  // namespace

template <class Value>
DyadicStepFunction<Value>::DyadicStepFunction(int dimension, int depth, std::vector<Value> values)
    : dimension_(dimension), depth_(depth), values_(std::move(values))
{
    if (dimension < 1 || depth < 0) {
        throw Error("dyadic step function needs dimension >= 1 and depth >= 0");
    }
    if (values_.size() != grid::cell_count(dimension, depth)) {
        throw Error("dyadic step function needs exactly 2^(n*depth) values");
    }
    for (const auto& v : values_) {
        if (!finite_value(v)) {
            throw Error("dyadic step function values must be finite");
        }
    }
}

template <class Value>
StepFunction1D<Value>::StepFunction1D(std::vector<double> breakpoints, std::vector<Value> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values))
{
    if (breakpoints_.size() < 2 || breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0) {
        throw Error("breakpoints must start at 0 and end at 1");
    }
    if (values_.size() + 1 != breakpoints_.size()) {
        throw Error("step function needs one value per piece");
    }
    for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
        if (!(breakpoints_[i] > breakpoints_[i - 1])) {
            throw Error("breakpoints must be strictly increasing");
        }
    }
    for (const auto& v : values_) {
        if (!finite_value(v)) {
            throw Error("step function values must be finite");
        }
    }
}

namespace grid {

std::size_t cell_count(int dimension, int depth)
{
    if (dimension < 1 || depth < 0) {
        throw Error("invalid dyadic grid");
    }
    const long bits = static_cast<long>(dimension) * depth;
    if (bits > 24) {
        throw Error("dyadic grid exceeds the 2^24 cell budget");
    }
    return std::size_t{1} << bits;
}

std::size_t ancestor(std::size_t cell, int dimension, int depth, int target)
{
    const int shift = depth - target;
    const std::size_t mask = (std::size_t{1} << depth) - 1;
    std::size_t out = 0;
    for (int d = 0; d < dimension; ++d) {
        const std::size_t idx = (cell >> (depth * d)) & mask;
        out |= (idx >> shift) << (target * d);
    }
    return out;
}

template <class Value>
std::vector<Value> coarsen(const DyadicStepFunction<Value>& f, int target_depth)
{
    if (target_depth < 0 || target_depth > f.depth()) {
        throw Error("coarsening target deeper than the function");
    }
    const std::size_t n_out = cell_count(f.dimension(), target_depth);
    const std::size_t per = f.size() / n_out;
    std::vector<Value> sums(n_out, Value(f[0] * 0.0));
    for (std::size_t c = 0; c < f.size(); ++c) {
        sums[ancestor(c, f.dimension(), f.depth(), target_depth)] += f[c];
    }
    for (auto& s : sums) {
        s = s / static_cast<double>(per);
    }
    return sums;
}

template <class Value>
std::vector<std::vector<Value>> level_averages(const DyadicStepFunction<Value>& f)
{
    const int n = f.dimension();
    std::vector<std::vector<Value>> levels(static_cast<std::size_t>(f.depth()) + 1);
    levels.back().assign(f.values().begin(), f.values().end());
    const double children = static_cast<double>(std::size_t{1} << n);
    for (int j = f.depth(); j > 0; --j) {
        auto& parent = levels[static_cast<std::size_t>(j - 1)];
        const auto& child = levels[static_cast<std::size_t>(j)];
        parent.assign(cell_count(n, j - 1), Value(child[0] * 0.0));
        for (std::size_t c = 0; c < child.size(); ++c) {
            parent[ancestor(c, n, j, j - 1)] += child[c];
        }
        for (auto& v : parent) {
            v = v / children;
        }
    }
    return levels;
}

template std::vector<double> coarsen(const DyadicStepFunction<double>&, int);
template std::vector<Point2> coarsen(const DyadicStepFunction<Point2>&, int);
template std::vector<std::vector<double>> level_averages(const DyadicStepFunction<double>&);
template std::vector<std::vector<Point2>> level_averages(const DyadicStepFunction<Point2>&);

}  // namespace grid

ScalarDyadic lift_to_dyadic(const ScalarStep& g, int depth)
{
    const std::size_t cells = grid::cell_count(1, depth);
    const double scale = static_cast<double>(cells);
    std::vector<double> values(cells);
    const auto bp = g.breakpoints();
    for (std::size_t i = 0; i < g.pieces(); ++i) {
        const double lo = bp[i] * scale;
        const double hi = bp[i + 1] * scale;
        if (lo != std::floor(lo) || hi != std::floor(hi)) {
            throw Error("breakpoints are not on the dyadic grid of the requested depth");
        }
        for (auto c = static_cast<std::size_t>(lo); c < static_cast<std::size_t>(hi); ++c) {
            values[c] = g.values()[i];
        }
    }
    return ScalarDyadic(1, depth, std::move(values));
}

Distribution distribution(const ScalarDyadic& f)
{
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(f.size());
    for (double v : f.values()) {
        pairs.emplace_back(v, f.cell_measure());
    }
    return merge_sorted(std::move(pairs));
}

Distribution distribution(const ScalarStep& g)
{
    std::vector<std::pair<double, double>> pairs;
    for (std::size_t i = 0; i < g.pieces(); ++i) {
        pairs.emplace_back(g.values()[i], g.length(i));
    }
    return merge_sorted(std::move(pairs));
}

template class DyadicStepFunction<double>;
template class DyadicStepFunction<Point2>;
template class StepFunction1D<double>;
template class StepFunction1D<Point2>;

}  // namespace lensrr
