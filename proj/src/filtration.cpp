#include "lensrr/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace lensrr {

namespace {

bool measures_match(double sum, double m) { return std::abs(sum - m) <= 1e-15 * m + 8 * std::numeric_limits<double>::epsilon() * m; }

// Measure-weighted sums on the grid of F, one per grid cell.
std::vector<Point2> grid_values(const PlanarDyadic& f, const Filtration& F)
{
    if (f.dimension() != F.dimension() || f.depth() < F.grid_depth()) {
        throw Error("incompatible depth: function grid is coarser than the filtration grid");
    }
    return f.depth() == F.grid_depth() ? std::vector<Point2>(f.values().begin(), f.values().end())
                                       : grid::coarsen(f, F.grid_depth());
}

Point2 cell_average(const std::vector<Point2>& g, const std::vector<std::size_t>& cells)
{
    Point2 s = Point2::Zero();
    for (auto c : cells) {
        s += g[c];
    }
    return s / static_cast<double>(cells.size());
}

std::vector<double> unique_sorted(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    for (double x : v) {
        if (out.empty() || x - out.back() > 1e-12) {
            out.push_back(x);
        }
    }
    return out;
}

// Binary check of the displacement condition; children averages a, b of an
// atom with average w and measures ma, mb.
bool displacement_ok(const Lens& lens, const Point2& w, const Point2& a, const Point2& b, double alpha)
{
    // Condition for omega' = a, omega'' = b.
    auto one = [&](const Point2& p1, const Point2& p2) {
        if ((p2 - w).norm() == 0.0 || segment_in_lens(lens, Segment(p2, w))) {
            return true;
        }
        return (p1 - w).norm() >= alpha * (p1 - p2).norm() * (1.0 - 1e-12);
    };
    return one(a, b) && one(b, a);
}

Certificate check_binary(const std::vector<Point2>& avg, const Filtration& F, const Lens& lens, double alpha)
{
    for (std::size_t k = 0; k + 1 < F.level_count(); ++k) {
        for (int a : F.split_atoms(k)) {
            const auto ch = F.children(k, a);
            if (!displacement_ok(lens, avg[static_cast<std::size_t>(a)], avg[static_cast<std::size_t>(ch[0])],
                                 avg[static_cast<std::size_t>(ch[1])], alpha)) {
                return Certificate::certified_no_for_binary;
            }
        }
    }
    return Certificate::certified_yes;
}

}  // namespace

Filtration::Filtration(int dimension, int grid_depth, std::vector<Atom> atoms, std::vector<std::vector<LevelEntry>> levels)
    : dimension_(dimension), grid_depth_(grid_depth), atoms_(std::move(atoms)), levels_(std::move(levels))
{
    const std::size_t cells = grid::cell_count(dimension, grid_depth);
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        const Atom& a = atoms_[i];
        if (a.id != static_cast<int>(i)) {
            throw Error("atom ids must match their position");
        }
        if (!(a.measure > 0.0 && a.measure <= 1.0) || a.cells.empty()) {
            throw Error("atom measure must lie in (0,1]");
        }
        if (!std::is_sorted(a.cells.begin(), a.cells.end()) || a.cells.back() >= cells) {
            throw Error("atom cells must be sorted grid cells");
        }
        if (!measures_match(static_cast<double>(a.cells.size()) / static_cast<double>(cells), a.measure)) {
            throw Error("atom measure does not match its cells");
        }
    }
    if (levels_.empty() || levels_[0].size() != 1 || levels_[0][0].parent != -1 ||
        atom(levels_[0][0].atom).measure != 1.0) {
        throw Error("level 0 must be the trivial algebra");
    }
    for (std::size_t k = 1; k < levels_.size(); ++k) {
        std::map<int, std::vector<int>> kids;
        for (const auto& e : levels_[k - 1]) {
            kids[e.atom];
        }
        for (const auto& e : levels_[k]) {
            if (e.atom < 0 || static_cast<std::size_t>(e.atom) >= atoms_.size()) {
                throw Error("unknown atom id");
            }
            auto it = kids.find(e.parent);
            if (it == kids.end()) {
                throw Error("level does not refine its predecessor");
            }
            it->second.push_back(e.atom);
        }
        for (const auto& [p, ch] : kids) {
            if (ch.empty()) {
                throw Error("atom lost between levels");
            }
            double sum = 0.0;
            std::vector<std::size_t> cs;
            for (int c : ch) {
                sum += atom(c).measure;
                cs.insert(cs.end(), atom(c).cells.begin(), atom(c).cells.end());
            }
            std::sort(cs.begin(), cs.end());
            if (!measures_match(sum, atom(p).measure) || cs != atom(p).cells) {
                throw Error("children do not partition their parent");
            }
        }
    }
}

std::vector<int> Filtration::children(std::size_t k, int a) const
{
    std::vector<int> out;
    for (const auto& e : levels_.at(k + 1)) {
        if (e.parent == a) {
            out.push_back(e.atom);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> Filtration::split_atoms(std::size_t k) const
{
    std::vector<int> out;
    for (const auto& e : levels_.at(k + 1)) {
        if (e.atom != e.parent && (out.empty() || out.back() != e.parent) &&
            std::find(out.begin(), out.end(), e.parent) == out.end()) {
            out.push_back(e.parent);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool Filtration::is_binary() const
{
    for (std::size_t k = 0; k + 1 < levels_.size(); ++k) {
        for (int a : split_atoms(k)) {
            if (children(k, a).size() != 2) {
                return false;
            }
        }
    }
    return true;
}

Filtration dyadic_filtration(int n, int depth, int grid_depth)
{
    if (grid_depth < 0) {
        grid_depth = depth;
    }
    if (depth < 0 || grid_depth < depth) {
        throw Error("dyadic filtration needs 0 <= depth <= grid depth");
    }
    const std::size_t cells = grid::cell_count(n, grid_depth);
    std::vector<Atom> atoms;
    std::vector<std::vector<LevelEntry>> levels;
    int offset_prev = 0;
    for (int j = 0; j <= depth; ++j) {
        const std::size_t count = grid::cell_count(n, j);
        const int offset = static_cast<int>(atoms.size());
        for (std::size_t c = 0; c < count; ++c) {
            atoms.push_back({offset + static_cast<int>(c), 1.0 / static_cast<double>(count), {}});
        }
        for (std::size_t cell = 0; cell < cells; ++cell) {
            atoms[static_cast<std::size_t>(offset) + grid::ancestor(cell, n, grid_depth, j)].cells.push_back(cell);
        }
        std::vector<LevelEntry> level;
        for (std::size_t c = 0; c < count; ++c) {
            const int parent = j == 0 ? -1 : offset_prev + static_cast<int>(grid::ancestor(c, n, j, j - 1));
            level.push_back({offset + static_cast<int>(c), parent});
        }
        levels.push_back(std::move(level));
        offset_prev = offset;
    }
    return Filtration(n, grid_depth, std::move(atoms), std::move(levels));
}

bool is_alpha_filtration(const Filtration& F, double alpha)
{
    for (std::size_t k = 1; k < F.level_count(); ++k) {
        for (const auto& e : F.levels()[k]) {
            if (F.atom(e.atom).measure < (alpha - 1e-12) * F.atom(e.parent).measure) {
                return false;
            }
        }
    }
    return true;
}

std::vector<double> admissible_alphas(const Filtration& F)
{
    std::vector<double> out;
    for (std::size_t k = 1; k < F.level_count(); ++k) {
        for (const auto& e : F.levels()[k]) {
            if (e.atom != e.parent) {
                out.push_back(F.atom(e.atom).measure / F.atom(e.parent).measure);
            }
        }
    }
    return unique_sorted(std::move(out));
}

std::vector<double> union_ratios(const Filtration& F)
{
    std::vector<double> out;
    for (std::size_t k = 0; k + 1 < F.level_count(); ++k) {
        for (int a : F.split_atoms(k)) {
            const auto ch = F.children(k, a);
            if (ch.size() > 20) {
                throw Error("too many children for union enumeration");
            }
            const std::size_t full = (std::size_t{1} << ch.size()) - 1;
            for (std::size_t mask = 1; mask < full; ++mask) {
                double m = 0.0;
                for (std::size_t i = 0; i < ch.size(); ++i) {
                    if (mask >> i & 1U) {
                        m += F.atom(ch[i]).measure;
                    }
                }
                out.push_back(m / F.atom(a).measure);
            }
        }
    }
    return unique_sorted(std::move(out));
}

std::vector<Point2> atom_averages(const PlanarDyadic& f, const Filtration& F)
{
    const auto g = grid_values(f, F);
    std::vector<Point2> out;
    out.reserve(F.atoms().size());
    for (const auto& a : F.atoms()) {
        out.push_back(cell_average(g, a.cells));
    }
    return out;
}

MartingaleTrajectory generate_martingale(const PlanarDyadic& f, const Filtration& F)
{
    if (f.dimension() != F.dimension()) {
        throw Error("incompatible depth: dimensions differ");
    }
    const auto avg = atom_averages(f, F);
    // f must be constant on every atom of the last level.
    std::vector<int> owner(grid::cell_count(F.dimension(), F.grid_depth()), -1);
    for (const auto& e : F.levels().back()) {
        for (auto c : F.atom(e.atom).cells) {
            owner[c] = e.atom;
        }
    }
    for (std::size_t cell = 0; cell < f.size(); ++cell) {
        const std::size_t g = grid::ancestor(cell, f.dimension(), f.depth(), F.grid_depth());
        const Point2& v = avg[static_cast<std::size_t>(owner[g])];
        if ((f[cell] - v).norm() > 1e-12 * (1.0 + v.norm())) {
            throw Error("function is not measurable with respect to the finest algebra");
        }
    }
    MartingaleTrajectory out;
    for (const auto& level : F.levels()) {
        std::vector<Point2> row;
        for (const auto& e : level) {
            row.push_back(avg[static_cast<std::size_t>(e.atom)]);
        }
        out.levels.push_back(std::move(row));
    }
    return out;
}

bool membership_in_class_F(const PlanarDyadic& f, const Filtration& F, const Lens& lens)
{
    const auto avg = atom_averages(f, F);
    for (const auto& level : F.levels()) {
        for (const auto& e : level) {
            if (!lens.contains(avg[static_cast<std::size_t>(e.atom)])) {
                return false;
            }
        }
    }
    return true;
}

BinaryRefinement binary_refinement(const Filtration& F, const PlanarDyadic& f, const Lens& lens)
{
    if (!membership_in_class_F(f, F, lens)) {
        throw Error("function is not in the class of the filtration");
    }
    const auto g = grid_values(f, F);
    std::vector<Atom> atoms = F.atoms();
    std::vector<Point2> sums;
    for (const auto& a : atoms) {
        sums.push_back(cell_average(g, a.cells) * static_cast<double>(a.cells.size()));
    }
    std::vector<std::vector<LevelEntry>> levels{F.levels()[0]};
    std::vector<std::size_t> index_map{0};

    for (std::size_t k = 0; k + 1 < F.level_count(); ++k) {
        // Current partition, starting from level k with persisting entries.
        std::vector<int> partition;
        for (const auto& e : F.levels()[k]) {
            partition.push_back(e.atom);
        }
        const auto splits = F.split_atoms(k);
        if (splits.empty()) {
            std::vector<LevelEntry> level;
            for (int a : partition) {
                level.push_back({a, a});
            }
            levels.push_back(std::move(level));
        }
        for (int w : splits) {
            auto rest = F.children(k, w);
            int cur = w;
            while (rest.size() > 1) {
                const Atom& ca = atoms[static_cast<std::size_t>(cur)];
                int chosen = -1;
                for (int c : rest) {
                    const Atom& cc = atoms[static_cast<std::size_t>(c)];
                    const Point2 comp = (sums[static_cast<std::size_t>(cur)] - sums[static_cast<std::size_t>(c)]) /
                                        static_cast<double>(ca.cells.size() - cc.cells.size());
                    if (lens.contains(comp)) {
                        chosen = c;
                        break;
                    }
                }
                if (chosen < 0) {
                    throw Error("selection lemma violated");
                }
                rest.erase(std::find(rest.begin(), rest.end(), chosen));
                int comp_id = rest.front();
                if (rest.size() > 1) {
                    Atom na{static_cast<int>(atoms.size()), 0.0, {}};
                    Point2 s = Point2::Zero();
                    for (int c : rest) {
                        const Atom& cc = atoms[static_cast<std::size_t>(c)];
                        na.measure += cc.measure;
                        na.cells.insert(na.cells.end(), cc.cells.begin(), cc.cells.end());
                        s += sums[static_cast<std::size_t>(c)];
                    }
                    std::sort(na.cells.begin(), na.cells.end());
                    comp_id = na.id;
                    atoms.push_back(std::move(na));
                    sums.push_back(s);
                }
                std::vector<LevelEntry> level;
                std::vector<int> next;
                for (int a : partition) {
                    if (a == cur) {
                        level.push_back({chosen, cur});
                        level.push_back({comp_id, cur});
                        next.push_back(chosen);
                        next.push_back(comp_id);
                    } else {
                        level.push_back({a, a});
                        next.push_back(a);
                    }
                }
                levels.push_back(std::move(level));
                partition = std::move(next);
                cur = comp_id;
            }
        }
        index_map.push_back(levels.size() - 1);
    }
    return {Filtration(F.dimension(), F.grid_depth(), std::move(atoms), std::move(levels)), std::move(index_map)};
}

const char* to_string(Certificate c)
{
    switch (c) {
    case Certificate::certified_yes:
        return "certified-yes";
    case Certificate::certified_no_for_binary:
        return "certified-no-for-binary";
    case Certificate::unknown:
        return "unknown";
    }
    return "unknown";
}

Certificate is_alpha_martingale_certified(const PlanarDyadic& f, const Filtration& F, const Lens& lens, double alpha)
{
    if (F.is_binary()) {
        if (!membership_in_class_F(f, F, lens)) {
            return Certificate::certified_no_for_binary;
        }
        return check_binary(atom_averages(f, F), F, lens, alpha);
    }
    try {
        const auto r = binary_refinement(F, f, lens);
        const auto c = check_binary(atom_averages(f, r.filtration), r.filtration, lens, alpha);
        return c == Certificate::certified_yes ? c : Certificate::unknown;
    } catch (const Error&) {
        return Certificate::unknown;
    }
}

}  // namespace lensrr
