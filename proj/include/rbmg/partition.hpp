#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rbmg/dense.hpp"
#include "rbmg/sparse.hpp"

namespace rbmg {

enum class Color { red, black };

Color opposite(Color c);
char color_char(Color c);

/// Disjoint split of node indices {0..n-1} into equal red and black halves.
/// Induces the down/up-sampling index maps and the mirror sign vector
/// (+1 on red nodes, -1 on black nodes). Immutable.
class RedBlackPartition {
public:
    /// Builds from the red node list; black is the complement. Rejects
    /// partitions with |red| != n/2, out-of-range or non-increasing lists.
    RedBlackPartition(std::size_t n, std::vector<std::size_t> red_nodes);

    /// red = even indices. The 1D ring split (evens-of-evens hierarchy).
    static RedBlackPartition even_odd(std::size_t n);

    /// Chessboard on a side-by-side torus stored row-major: red = (i+j) even.
    static RedBlackPartition chessboard(std::size_t side);

    /// Row-parity split of a rows-by-cols grid stored row-major: red = even
    /// row. Used on the 45-degree rotated grids between chessboard levels.
    static RedBlackPartition row_parity(std::size_t rows, std::size_t cols);

    std::size_t size() const { return n_; }
    std::size_t half() const { return n_ / 2; }

    std::span<const std::size_t> nodes(Color c) const;
    std::span<const std::size_t> red() const { return red_; }
    std::span<const std::size_t> black() const { return black_; }

    /// Mirror sign of node i: +1 red, -1 black.
    double sign(std::size_t i) const { return signs_[i]; }
    std::span<const double> signs() const { return signs_; }

    std::string to_json() const;
    static RedBlackPartition from_json(const std::string& text);

    bool operator==(const RedBlackPartition& other) const;

private:
    std::size_t n_ = 0;
    std::vector<std::size_t> red_;
    std::vector<std::size_t> black_;
    std::vector<double> signs_;
};

/// Restriction of x to the chosen color's nodes, in stored order.
Vector downsample(const RedBlackPartition& p, Color c, const Vector& x);

/// Scatter of y to the chosen color's nodes, zeros elsewhere.
Vector upsample(const RedBlackPartition& p, Color c, const Vector& y);

/// Mirror of a square matrix: entrywise sign flip s_i * m_ij * s_j.
/// Preserves the sparsity pattern and entry magnitudes exactly.
SparseMatrix mirror(const RedBlackPartition& p, const SparseMatrix& m);
DenseMatrix mirror(const RedBlackPartition& p, const DenseMatrix& m);

/// The (n/2)-square block of m at (row color nodes) x (column color nodes).
SparseMatrix color_submatrix(const RedBlackPartition& p, Color row_color, Color col_color,
                             const SparseMatrix& m);

/// Materialized 0/1 down-sampling matrix (n/2-by-n); verification only --
/// solvers use the index operations above.
SparseMatrix downsampling_matrix(const RedBlackPartition& p, Color c);
SparseMatrix upsampling_matrix(const RedBlackPartition& p, Color c);

} // namespace rbmg
