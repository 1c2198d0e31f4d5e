#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "rbmg/errors.hpp"

namespace rbmg {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

/// Row-major dense complex matrix. Used for eigenvector bases, coarse grid
/// correction matrices and the LU verification oracle; the solve path never
/// touches dense n-by-n storage.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<Complex>& data() { return data_; }
    const std::vector<Complex>& data() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

struct VectorNorms {
    double l2 = 0;
    double linf = 0;
};

VectorNorms norms(const Vector& x);
double norm2(const Vector& x);
double norm_inf(const Vector& x);

Vector add(const Vector& a, const Vector& b);
Vector subtract(const Vector& a, const Vector& b);

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
Vector multiply(const DenseMatrix& a, const Vector& x);
DenseMatrix adjoint(const DenseMatrix& a);
DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b);

double frobenius_norm(const DenseMatrix& a);
double max_abs(const DenseMatrix& a);
double max_abs(const Vector& x);

/// Largest entrywise deviation |a - b|.
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

} // namespace rbmg
