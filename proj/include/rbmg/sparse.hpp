#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rbmg/counting.hpp"
#include "rbmg/dense.hpp"
#include "rbmg/errors.hpp"

namespace rbmg {

struct Triplet {
    std::size_t row = 0;
    std::size_t col = 0;
    Complex value{0.0, 0.0};
};

/// Complex sparse matrix in canonical compressed-row form: within each row
/// the column indices are strictly increasing, coincident input entries are
/// summed, and exact zeros are dropped. The canonical form makes equality
/// comparisons bit-deterministic. Immutable after construction.
class SparseMatrix {
public:
    SparseMatrix() = default;

    /// Builds the canonical form. Throws std::invalid_argument on an
    /// out-of-range index or a non-finite value.
    SparseMatrix(std::size_t rows, std::size_t cols, std::vector<Triplet> entries);

    static SparseMatrix identity(std::size_t n);
    static SparseMatrix zero(std::size_t rows, std::size_t cols);
    static SparseMatrix from_dense(const DenseMatrix& dense, double drop_tol = 0.0);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nnz() const { return values_.size(); }

    std::span<const std::size_t> row_offsets() const { return row_offsets_; }
    std::span<const std::size_t> col_indices() const { return col_indices_; }
    std::span<const Complex> values() const { return values_; }

    /// Entries of row i as (column, value) spans.
    std::span<const std::size_t> row_cols(std::size_t i) const;
    std::span<const Complex> row_values(std::size_t i) const;

    std::vector<Triplet> triplets() const;

    bool operator==(const SparseMatrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> row_offsets_; // rows_+1 offsets
    std::vector<std::size_t> col_indices_;
    std::vector<Complex> values_;

    friend SparseMatrix transform_values(const SparseMatrix&, const std::vector<double>&,
                                         const std::vector<double>&);
};

/// Exact sparse matrix-vector product.
Vector spmv(const SparseMatrix& a, const Vector& x, MulCounter* counter = nullptr);

/// Exact sparse product, canonicalized; entries with magnitude <= drop_tol
/// are removed (drop_tol 0 keeps everything except exact zeros).
SparseMatrix spmm(const SparseMatrix& a, const SparseMatrix& b, double drop_tol = 0.0,
                  MulCounter* counter = nullptr);

SparseMatrix conj_transpose(const SparseMatrix& a);

/// Row/column selection with zero arithmetic cost. Index lists must be
/// strictly increasing (color node lists are).
SparseMatrix select_rows(const SparseMatrix& a, std::span<const std::size_t> rows);
SparseMatrix select_cols(const SparseMatrix& a, std::span<const std::size_t> cols);

DenseMatrix to_dense(const SparseMatrix& a);

double frobenius_norm(const SparseMatrix& a);
double max_abs(const SparseMatrix& a);

/// True when every off-diagonal magnitude is below tol.
bool is_diagonal(const SparseMatrix& a, double tol);

} // namespace rbmg
