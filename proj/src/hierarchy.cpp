#include "rbmg/hierarchy.hpp"

#include <cmath>
#include <utility>

namespace rbmg {

PartitionHierarchy::PartitionHierarchy(Provider provider, std::size_t base_size,
                                       std::size_t max_levels)
    : provider_(std::move(provider)), base_size_(base_size), max_levels_(max_levels) {}

std::optional<RedBlackPartition> PartitionHierarchy::partition(std::size_t grid_size,
                                                               std::size_t level) const {
    if (level >= max_levels_ || grid_size % 2 != 0 || grid_size == 0) return std::nullopt;
    return provider_(grid_size, level);
}

PartitionHierarchy PartitionHierarchy::ring(std::size_t base_size) {
    auto provider = [](std::size_t n, std::size_t) -> std::optional<RedBlackPartition> {
        return RedBlackPartition::even_odd(n);
    };
    return PartitionHierarchy(provider, base_size, static_cast<std::size_t>(-1));
}

namespace {

std::optional<std::size_t> exact_sqrt(std::size_t n) {
    const auto r = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(n))));
    for (std::size_t c = (r > 1 ? r - 1 : 0); c <= r + 1; ++c)
        if (c * c == n) return c;
    return std::nullopt;
}

} // namespace

PartitionHierarchy PartitionHierarchy::torus(std::size_t base_size) {
    auto provider = [](std::size_t n, std::size_t level) -> std::optional<RedBlackPartition> {
        if (level % 2 == 0) {
            // square M-by-M grid
            const auto side = exact_sqrt(n);
            if (!side || *side % 2 != 0) return std::nullopt;
            return RedBlackPartition::chessboard(*side);
        }
        // rotated grid: M rows of M/2 nodes
        const auto rows = exact_sqrt(2 * n);
        if (!rows || *rows % 2 != 0 || (*rows / 2) % 2 != 0) return std::nullopt;
        return RedBlackPartition::row_parity(*rows, *rows / 2);
    };
    return PartitionHierarchy(provider, base_size, static_cast<std::size_t>(-1));
}

PartitionHierarchy PartitionHierarchy::single_level(std::size_t n) {
    auto provider = [n](std::size_t size, std::size_t level) -> std::optional<RedBlackPartition> {
        if (level != 0 || size != n) return std::nullopt;
        return RedBlackPartition::even_odd(size);
    };
    // Coarse halves go straight to the dense base case.
    return PartitionHierarchy(provider, n / 2, 1);
}

PartitionHierarchy PartitionHierarchy::shifted(std::size_t levels) const {
    Provider base = provider_;
    const std::size_t max = max_levels_ == static_cast<std::size_t>(-1)
                                ? max_levels_
                                : (levels >= max_levels_ ? 0 : max_levels_ - levels);
    auto provider = [base, levels](std::size_t n,
                                   std::size_t level) -> std::optional<RedBlackPartition> {
        return base(n, level + levels);
    };
    return PartitionHierarchy(provider, base_size_, max);
}

} // namespace rbmg
