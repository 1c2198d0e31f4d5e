#include "rbmg/lu.hpp"

#include <cmath>
#include <utility>

#include "rbmg/errors.hpp"

namespace rbmg {

namespace {
constexpr double kPivotFloor = 1e-13; // relative to the largest input magnitude
}

LuFactorization::LuFactorization(DenseMatrix a, MulCounter* counter) : lu_(std::move(a)) {
    if (lu_.rows() != lu_.cols()) throw DimensionMismatch("lu: matrix must be square");
    const std::size_t n = lu_.rows();
    const double amax = max_abs(lu_);
    if (amax == 0.0) throw SingularMatrix("lu: zero matrix");
    const double floor = kPivotFloor * amax;

    perm_.resize(n);
    for (std::size_t i = 0; i < n; ++i) perm_[i] = i;

    std::uint64_t mults = 0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = std::abs(lu_(i, k));
            if (m > best) {
                best = m;
                p = i;
            }
        }
        if (best < floor) throw SingularMatrix("lu: pivot below singularity threshold");
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
            std::swap(perm_[k], perm_[p]);
        }
        const Complex pivot = lu_(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex l = lu_(i, k) / pivot;
            lu_(i, k) = l;
            ++mults;
            if (l == Complex(0.0, 0.0)) continue;
            for (std::size_t j = k + 1; j < n; ++j) {
                lu_(i, j) -= l * lu_(k, j);
                ++mults;
            }
        }
    }
    count(counter, mults);
}

Vector LuFactorization::solve(const Vector& rhs, MulCounter* counter) const {
    const std::size_t n = size();
    if (rhs.size() != n) throw DimensionMismatch("lu solve: rhs length mismatch");
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[perm_[i]];
    std::uint64_t mults = 0;
    for (std::size_t i = 1; i < n; ++i) {
        Complex acc = x[i];
        for (std::size_t j = 0; j < i; ++j) {
            acc -= lu_(i, j) * x[j];
            ++mults;
        }
        x[i] = acc;
    }
    for (std::size_t ii = n; ii-- > 0;) {
        Complex acc = x[ii];
        for (std::size_t j = ii + 1; j < n; ++j) {
            acc -= lu_(ii, j) * x[j];
            ++mults;
        }
        x[ii] = acc / lu_(ii, ii);
        ++mults;
    }
    count(counter, mults);
    return x;
}

DenseMatrix LuFactorization::solve_matrix(const DenseMatrix& rhs) const {
    if (rhs.rows() != size()) throw DimensionMismatch("lu solve_matrix: shape mismatch");
    DenseMatrix out(rhs.rows(), rhs.cols());
    Vector col(rhs.rows());
    for (std::size_t j = 0; j < rhs.cols(); ++j) {
        for (std::size_t i = 0; i < rhs.rows(); ++i) col[i] = rhs(i, j);
        const Vector x = solve(col);
        for (std::size_t i = 0; i < rhs.rows(); ++i) out(i, j) = x[i];
    }
    return out;
}

DenseMatrix LuFactorization::inverse() const {
    return solve_matrix(DenseMatrix::identity(size()));
}

Vector dense_lu_solve(const DenseMatrix& a, const Vector& f, MulCounter* counter) {
    return LuFactorization(a, counter).solve(f, counter);
}

DenseMatrix dense_inverse(const DenseMatrix& a) {
    return LuFactorization(a).inverse();
}

} // namespace rbmg
