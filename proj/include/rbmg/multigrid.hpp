#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "rbmg/hierarchy.hpp"
#include "rbmg/sparse.hpp"

namespace rbmg {

enum class DmgMethod { multiplicative, additive };

struct DmgOptions {
    /// Multichannel coarsest systems at or below this size use dense LU;
    /// larger ones continue with the recursive additive driver.
    std::size_t dense_crossover = 512;
    /// Off-diagonal magnitudes below this make a coarse matrix "diagonal"
    /// and the recursion solves it in linear time.
    double diagonal_tol = 1e-14;
    /// Mirror coarsening squares entry magnitudes level by level; once the
    /// largest magnitude passes this bound (and the grid fits the dense
    /// crossover) the level is solved densely instead of coarsened further,
    /// before the remaining double-precision range degrades the exactness
    /// identities.
    double entry_growth_guard = 1e30;
    /// Upper bound on concurrent branches of the additive recursion; the
    /// multiplicative driver is sequential by data dependence.
    unsigned threads = 1;
};

struct LevelVisit {
    std::size_t level = 0;
    std::string path; // color letters from the fine grid, "" = root
    std::size_t size = 0;
    std::size_t max_row_nonzeros = 0; // stencil growth monitor
    bool was_diagonal = false;
};

struct SolveReport {
    Vector solution;
    std::uint64_t multiplications = 0;
    std::vector<LevelVisit> levels_visited;
    double relative_residual = 0; // ||f - A v|| / ||f|| on the original system
    std::chrono::duration<double> wall_time{0};
    /// Root-level intermediate fields, in a fixed order:
    /// multiplicative: v0, r, e0; additive: v_red, v_black.
    std::vector<std::pair<std::string, Vector>> intermediates;
};

/// Recursive multiplicative direct solver (W-cycle): nested iteration on
/// the red coarse grid D A U, correction scheme on the black coarse grid
/// D A (A* U) of the residual. Branches degenerate to V-cycles whenever a
/// coarse matrix turns diagonal.
SolveReport dmg_multiplicative(const SparseMatrix& a, const Vector& f,
                               const PartitionHierarchy& hierarchy, const DmgOptions& opts = {});

/// Recursive additive direct solver (binary tree): both channels restrict
/// by plain sampling, interpolate through the mirror of the level's system,
/// and their interpolated solutions sum to the answer.
SolveReport dmg_additive(const SparseMatrix& a, const Vector& f,
                         const PartitionHierarchy& hierarchy, const DmgOptions& opts = {});

struct ChannelSolution {
    std::string path;  // e.g. "rrb"
    Vector interpolated; // P_c solve_c(R_c f), a full fine-grid field
    bool zero_source = false;
    std::size_t size = 0;
};

struct MultichannelReport {
    Vector solution;
    std::uint64_t multiplications = 0;
    double relative_residual = 0;
    std::chrono::duration<double> wall_time{0};
    std::vector<ChannelSolution> channels; // fixed order: r before b per position
};

/// Flattened additive scheme: per channel c in {r,b}^depth the restriction
/// is a pure down-sampling composition and the interpolation the composed
/// per-level mirror interpolations; each channel's coarsest system is
/// solved independently and the interpolated solutions are summed in fixed
/// channel order.
MultichannelReport dmg_additive_multichannel(const SparseMatrix& a, const Vector& f,
                                             const PartitionHierarchy& hierarchy,
                                             std::size_t depth, const DmgOptions& opts = {});

struct ComplexityRow {
    std::size_t n = 0;
    std::uint64_t multiplications = 0;
    double wall_seconds = 0;
    double diagonal_fraction = 0; // visited grids solved by the diagonal shortcut
};

/// Runs one solve per size and reports the measured multiplication counts
/// (Table-style accounting: one count per nonzero-times-scalar product).
std::vector<ComplexityRow> count_complexity(
    const std::vector<std::size_t>& sizes, DmgMethod method,
    const std::function<std::pair<SparseMatrix, PartitionHierarchy>(std::size_t)>& instance,
    const std::function<Vector(std::size_t)>& source, const DmgOptions& opts = {});

} // namespace rbmg
