#pragma once

#include <cstddef>
#include <vector>

#include "rbmg/counting.hpp"
#include "rbmg/dense.hpp"

namespace rbmg {

/// Dense LU with partial pivoting over the complex field. This is the
/// verification oracle for every solver in the library and the base-case
/// solver of the recursive algorithms.
///
/// Throws SingularMatrix when a pivot magnitude falls below
/// 1e-13 * max|a_ij| of the input (the invertibility assumption on the
/// system is violated); never regularizes.
class LuFactorization {
public:
    explicit LuFactorization(DenseMatrix a, MulCounter* counter = nullptr);

    std::size_t size() const { return lu_.rows(); }

    Vector solve(const Vector& rhs, MulCounter* counter = nullptr) const;

    /// Column-by-column solve; rhs and result are size-n by k.
    DenseMatrix solve_matrix(const DenseMatrix& rhs) const;

    DenseMatrix inverse() const;

private:
    DenseMatrix lu_;
    std::vector<std::size_t> perm_;
};

Vector dense_lu_solve(const DenseMatrix& a, const Vector& f, MulCounter* counter = nullptr);
DenseMatrix dense_inverse(const DenseMatrix& a);

} // namespace rbmg
