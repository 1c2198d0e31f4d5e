#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "rbmg/partition.hpp"

namespace rbmg {

/// Per-level partition provider driving the recursive solvers. Level 0 is
/// the fine grid; the provider receives the grid size at that level and
/// returns its red-black split, or nothing when the hierarchy ends there.
/// base_size is the size at or below which recursion stops (Table-style
/// base case, solved densely).
class PartitionHierarchy {
public:
    using Provider =
        std::function<std::optional<RedBlackPartition>(std::size_t grid_size, std::size_t level)>;

    PartitionHierarchy(Provider provider, std::size_t base_size, std::size_t max_levels);

    /// Partition of a size-`grid_size` grid at `level`; nullopt when the
    /// hierarchy is exhausted (past max_levels, odd size, or the provider
    /// declines).
    std::optional<RedBlackPartition> partition(std::size_t grid_size, std::size_t level) const;

    std::size_t base_size() const { return base_size_; }
    std::size_t max_levels() const { return max_levels_; }

    /// 1D ring: evens/odds at every level and branch (evens-of-evens).
    static PartitionHierarchy ring(std::size_t base_size = 16);

    /// 2D torus: chessboard on square grids, row parity on the rotated
    /// grids in between. Grid shape is recovered from (size, level parity):
    /// even levels are M-by-M squares, odd levels M-rows-by-M/2-cols
    /// rotated grids.
    static PartitionHierarchy torus(std::size_t base_size = 16);

    /// A single fine-level split (used for families whose eigenbasis does
    /// not recurse); coarse systems land in the dense base case.
    static PartitionHierarchy single_level(std::size_t n);

    /// Offsets every level query by `levels`; used when a solver resumes
    /// partway down an existing hierarchy.
    PartitionHierarchy shifted(std::size_t levels) const;

private:
    Provider provider_;
    std::size_t base_size_;
    std::size_t max_levels_;
};

} // namespace rbmg
