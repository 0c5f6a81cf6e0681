#pragma once

// Finite filtrations on the dyadic grid of [0,1]^n, martingales generated by
// plane-valued step functions, and binary refinement.

#include "lensrr/lens.hpp"
#include "lensrr/step_function.hpp"

#include <vector>

namespace lensrr {

struct Atom {
    int id;
    double measure;
    std::vector<std::size_t> cells;  // sorted cells of the underlying grid
};

/// One atom of an algebra.  `parent` is the atom of the previous level that
/// contains it (the atom itself when it is not split, -1 on level 0).
struct LevelEntry {
    int atom;
    int parent;
};

class Filtration {
public:
    /// Atom ids must equal their index in `atoms`.  Level 0 must be the whole
    /// space; every level refines the previous one.
    Filtration(int dimension, int grid_depth, std::vector<Atom> atoms, std::vector<std::vector<LevelEntry>> levels);

    [[nodiscard]] int dimension() const { return dimension_; }
    [[nodiscard]] int grid_depth() const { return grid_depth_; }
    [[nodiscard]] const std::vector<Atom>& atoms() const { return atoms_; }
    [[nodiscard]] const Atom& atom(int id) const { return atoms_[static_cast<std::size_t>(id)]; }
    [[nodiscard]] const std::vector<std::vector<LevelEntry>>& levels() const { return levels_; }
    [[nodiscard]] std::size_t level_count() const { return levels_.size(); }

    /// Children of `atom` at level k+1 (just `atom` when it persists).
    [[nodiscard]] std::vector<int> children(std::size_t k, int atom) const;
    /// Atoms of level k that are split at the transition to level k+1.
    [[nodiscard]] std::vector<int> split_atoms(std::size_t k) const;
    /// Every split produces exactly two children.
    [[nodiscard]] bool is_binary() const;

private:
    int dimension_;
    int grid_depth_;
    std::vector<Atom> atoms_;
    std::vector<std::vector<LevelEntry>> levels_;
};

/// Level j holds the dyadic cubes of side 2^-j, j = 0..depth.  Atom cells
/// refer to the grid of depth `grid_depth` (>= depth; default depth).
[[nodiscard]] Filtration dyadic_filtration(int n, int depth, int grid_depth = -1);

[[nodiscard]] bool is_alpha_filtration(const Filtration& F, double alpha);

/// Child-to-parent measure ratios over all splits, ascending.
[[nodiscard]] std::vector<double> admissible_alphas(const Filtration& F);

/// Ratios of proper unions of children to their parent, ascending.
[[nodiscard]] std::vector<double> union_ratios(const Filtration& F);

/// Averages of f on every atom, indexed by atom id.  f may live on a finer
/// grid than F.  Throws "incompatible depth" otherwise.
[[nodiscard]] std::vector<Point2> atom_averages(const PlanarDyadic& f, const Filtration& F);

struct MartingaleTrajectory {
    /// levels[k][i] is the average on F.levels()[k][i].atom.
    std::vector<std::vector<Point2>> levels;
};

/// Throws when f is not constant on the atoms of the last level.
[[nodiscard]] MartingaleTrajectory generate_martingale(const PlanarDyadic& f, const Filtration& F);

[[nodiscard]] bool membership_in_class_F(const PlanarDyadic& f, const Filtration& F, const Lens& lens);

struct BinaryRefinement {
    Filtration filtration;
    std::vector<std::size_t> index_map;  // level n of F is level index_map[n] of the refinement
};

/// Splits every atom into its children one child at a time, keeping all
/// intermediate averages inside the lens.
[[nodiscard]] BinaryRefinement binary_refinement(const Filtration& F, const PlanarDyadic& f, const Lens& lens);

enum class Certificate { certified_yes, certified_no_for_binary, unknown };

[[nodiscard]] const char* to_string(Certificate c);

[[nodiscard]] Certificate is_alpha_martingale_certified(const PlanarDyadic& f, const Filtration& F, const Lens& lens,
                                                        double alpha);

}  // namespace lensrr
