#pragma once

// Step functions on the dyadic grid of [0,1]^n and on [0,1].

#include "lensrr/lens.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lensrr {

/// Largest number of cells a dyadic grid may hold.
inline constexpr std::size_t kMaxCells = std::size_t{1} << 24;

/// Row-major cell order: index = sum_d idx_d * 2^(depth*d), idx_d in [0, 2^depth).
template <class Value>
class DyadicStepFunction {
public:
    DyadicStepFunction(int dimension, int depth, std::vector<Value> values);

    [[nodiscard]] int dimension() const { return dimension_; }
    [[nodiscard]] int depth() const { return depth_; }
    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] std::span<const Value> values() const { return values_; }
    [[nodiscard]] const Value& operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] double cell_measure() const { return 1.0 / static_cast<double>(values_.size()); }

private:
    int dimension_;
    int depth_;
    std::vector<Value> values_;
};

using ScalarDyadic = DyadicStepFunction<double>;
using PlanarDyadic = DyadicStepFunction<Point2>;

/// Piecewise-constant function on [0,1]; breakpoints strictly increase from 0
/// to 1 and piece i covers [b_i, b_{i+1}).
template <class Value>
class StepFunction1D {
public:
    StepFunction1D(std::vector<double> breakpoints, std::vector<Value> values);

    [[nodiscard]] std::span<const double> breakpoints() const { return breakpoints_; }
    [[nodiscard]] std::span<const Value> values() const { return values_; }
    [[nodiscard]] std::size_t pieces() const { return values_.size(); }
    [[nodiscard]] double length(std::size_t i) const { return breakpoints_[i + 1] - breakpoints_[i]; }

private:
    std::vector<double> breakpoints_;
    std::vector<Value> values_;
};

using ScalarStep = StepFunction1D<double>;
using PlanarStep = StepFunction1D<Point2>;

namespace grid {

/// 2^(dimension*depth), throwing past kMaxCells.
[[nodiscard]] std::size_t cell_count(int dimension, int depth);

/// Index of the level-`target` cube containing cell `cell` of level `depth`.
[[nodiscard]] std::size_t ancestor(std::size_t cell, int dimension, int depth, int target);

/// Cube averages per level, level j holding 2^(n j) entries in row-major order.
template <class Value>
[[nodiscard]] std::vector<std::vector<Value>> level_averages(const DyadicStepFunction<Value>& f);

/// Averages of f over the cells of a coarser grid.
template <class Value>
[[nodiscard]] std::vector<Value> coarsen(const DyadicStepFunction<Value>& f, int target_depth);

}  // namespace grid

/// Lifts a 1D step function with breakpoints on the 2^-depth grid to a dyadic
/// function on [0,1].
[[nodiscard]] ScalarDyadic lift_to_dyadic(const ScalarStep& g, int depth);

/// Multiset of (value, measure) pairs, sorted by value and merged.
using Distribution = std::vector<std::pair<double, double>>;
[[nodiscard]] Distribution distribution(const ScalarDyadic& f);
[[nodiscard]] Distribution distribution(const ScalarStep& g);

}  // namespace lensrr
