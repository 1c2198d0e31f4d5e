#pragma once

#include <random>

#include "rbmg/dense.hpp"
#include "rbmg/sparse.hpp"

namespace rbmg::test {

inline std::mt19937_64 seeded_rng(std::uint64_t salt = 0) {
    return std::mt19937_64(0xABCD1234u + salt);
}

inline Vector random_vector(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> dist;
    Vector x(n);
    for (Complex& v : x) v = Complex(dist(rng), dist(rng));
    return x;
}

inline SparseMatrix random_sparse(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                                  double density) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::normal_distribution<double> dist;
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (coin(rng) < density) t.push_back({i, j, Complex(dist(rng), dist(rng))});
    return SparseMatrix(rows, cols, std::move(t));
}

/// Random diagonally dominant system; well conditioned by construction.
inline SparseMatrix random_dominant(std::mt19937_64& rng, std::size_t n, double density) {
    SparseMatrix base = random_sparse(rng, n, n, density);
    std::vector<Triplet> t = base.triplets();
    std::vector<double> row_sum(n, 0.0);
    for (const Triplet& e : t)
        if (e.row != e.col) row_sum[e.row] += std::abs(e.value);
    for (std::size_t i = 0; i < n; ++i) t.push_back({i, i, Complex(row_sum[i] + 2.0, 0.5)});
    return SparseMatrix(n, n, std::move(t));
}

/// Independent dense mat-vec used as the oracle against spmv.
inline Vector dense_matvec_oracle(const DenseMatrix& a, const Vector& x) {
    Vector y(a.rows(), Complex(0.0, 0.0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
    return y;
}

inline double rel_error(const Vector& got, const Vector& want) {
    return norm2(subtract(got, want)) / norm2(want);
}

} // namespace rbmg::test
