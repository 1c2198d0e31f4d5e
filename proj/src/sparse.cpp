#include "rbmg/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rbmg {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, std::vector<Triplet> entries)
    : rows_(rows), cols_(cols) {
    for (const Triplet& t : entries) {
        if (t.row >= rows_ || t.col >= cols_)
            throw std::invalid_argument("sparse entry index out of range");
        if (!std::isfinite(t.value.real()) || !std::isfinite(t.value.imag()))
            throw std::invalid_argument("sparse entry is not finite");
    }
    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    row_offsets_.assign(rows_ + 1, 0);
    col_indices_.reserve(entries.size());
    values_.reserve(entries.size());
    std::size_t i = 0;
    while (i < entries.size()) {
        std::size_t j = i;
        Complex sum(0.0, 0.0);
        while (j < entries.size() && entries[j].row == entries[i].row
               && entries[j].col == entries[i].col) {
            sum += entries[j].value;
            ++j;
        }
        if (sum != Complex(0.0, 0.0)) {
            col_indices_.push_back(entries[i].col);
            values_.push_back(sum);
            ++row_offsets_[entries[i].row + 1];
        }
        i = j;
    }
    for (std::size_t r = 0; r < rows_; ++r) row_offsets_[r + 1] += row_offsets_[r];
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
    std::vector<Triplet> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = {i, i, Complex(1.0, 0.0)};
    return SparseMatrix(n, n, std::move(t));
}

SparseMatrix SparseMatrix::zero(std::size_t rows, std::size_t cols) {
    return SparseMatrix(rows, cols, {});
}

SparseMatrix SparseMatrix::from_dense(const DenseMatrix& dense, double drop_tol) {
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < dense.rows(); ++i)
        for (std::size_t j = 0; j < dense.cols(); ++j)
            if (std::abs(dense(i, j)) > drop_tol) t.push_back({i, j, dense(i, j)});
    return SparseMatrix(dense.rows(), dense.cols(), std::move(t));
}

std::span<const std::size_t> SparseMatrix::row_cols(std::size_t i) const {
    return {col_indices_.data() + row_offsets_[i], row_offsets_[i + 1] - row_offsets_[i]};
}

std::span<const Complex> SparseMatrix::row_values(std::size_t i) const {
    return {values_.data() + row_offsets_[i], row_offsets_[i + 1] - row_offsets_[i]};
}

std::vector<Triplet> SparseMatrix::triplets() const {
    std::vector<Triplet> out;
    out.reserve(nnz());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
            out.push_back({i, col_indices_[k], values_[k]});
    return out;
}

Vector spmv(const SparseMatrix& a, const Vector& x, MulCounter* counter) {
    if (a.cols() != x.size()) throw DimensionMismatch("spmv: matrix/vector shape mismatch");
    Vector y(a.rows(), Complex(0.0, 0.0));
    const auto offsets = a.row_offsets();
    const auto cols = a.col_indices();
    const auto vals = a.values();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex acc(0.0, 0.0);
        for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k) acc += vals[k] * x[cols[k]];
        y[i] = acc;
    }
    count(counter, a.nnz());
    return y;
}

SparseMatrix spmm(const SparseMatrix& a, const SparseMatrix& b, double drop_tol,
                  MulCounter* counter) {
    if (a.cols() != b.rows()) throw DimensionMismatch("spmm: inner dimensions differ");
    std::vector<Triplet> out;
    std::vector<Complex> accum(b.cols(), Complex(0.0, 0.0));
    std::vector<std::size_t> touched;
    std::vector<char> seen(b.cols(), 0);
    std::uint64_t products = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        touched.clear();
        const auto acols = a.row_cols(i);
        const auto avals = a.row_values(i);
        for (std::size_t p = 0; p < acols.size(); ++p) {
            const std::size_t k = acols[p];
            const Complex aik = avals[p];
            const auto bcols = b.row_cols(k);
            const auto bvals = b.row_values(k);
            products += bcols.size();
            for (std::size_t q = 0; q < bcols.size(); ++q) {
                const std::size_t j = bcols[q];
                if (!seen[j]) {
                    seen[j] = 1;
                    touched.push_back(j);
                    accum[j] = Complex(0.0, 0.0);
                }
                accum[j] += aik * bvals[q];
            }
        }
        std::sort(touched.begin(), touched.end());
        for (std::size_t j : touched) {
            if (std::abs(accum[j]) > drop_tol) out.push_back({i, j, accum[j]});
            seen[j] = 0;
        }
    }
    count(counter, products);
    return SparseMatrix(a.rows(), b.cols(), std::move(out));
}

SparseMatrix conj_transpose(const SparseMatrix& a) {
    std::vector<Triplet> t;
    t.reserve(a.nnz());
    for (const Triplet& e : a.triplets()) t.push_back({e.col, e.row, std::conj(e.value)});
    return SparseMatrix(a.cols(), a.rows(), std::move(t));
}

SparseMatrix select_rows(const SparseMatrix& a, std::span<const std::size_t> rows) {
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::size_t r = rows[i];
        if (r >= a.rows()) throw DimensionMismatch("select_rows: index out of range");
        const auto cols = a.row_cols(r);
        const auto vals = a.row_values(r);
        for (std::size_t k = 0; k < cols.size(); ++k) t.push_back({i, cols[k], vals[k]});
    }
    return SparseMatrix(rows.size(), a.cols(), std::move(t));
}

SparseMatrix select_cols(const SparseMatrix& a, std::span<const std::size_t> cols) {
    constexpr std::size_t kDropped = static_cast<std::size_t>(-1);
    std::vector<std::size_t> col_map(a.cols(), kDropped);
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j] >= a.cols()) throw DimensionMismatch("select_cols: index out of range");
        col_map[cols[j]] = j;
    }
    std::vector<Triplet> t;
    for (const Triplet& e : a.triplets()) {
        const std::size_t j = col_map[e.col];
        if (j != kDropped) t.push_back({e.row, j, e.value});
    }
    return SparseMatrix(a.rows(), cols.size(), std::move(t));
}

DenseMatrix to_dense(const SparseMatrix& a) {
    DenseMatrix d(a.rows(), a.cols());
    for (const Triplet& e : a.triplets()) d(e.row, e.col) = e.value;
    return d;
}

double frobenius_norm(const SparseMatrix& a) {
    double sum = 0;
    for (const Complex& v : a.values()) {
        const double m = std::abs(v);
        sum += m * m;
    }
    return std::sqrt(sum);
}

double max_abs(const SparseMatrix& a) {
    double m = 0;
    for (const Complex& v : a.values()) m = std::max(m, std::abs(v));
    return m;
}

bool is_diagonal(const SparseMatrix& a, double tol) {
    for (const Triplet& e : a.triplets())
        if (e.row != e.col && std::abs(e.value) >= tol) return false;
    return true;
}

} // namespace rbmg
