#include "rbmg/dense.hpp"

#include <algorithm>
#include <cmath>

namespace rbmg {

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

VectorNorms norms(const Vector& x) {
    VectorNorms out;
    double sum = 0;
    for (const Complex& v : x) {
        const double a = std::abs(v);
        sum += a * a;
        out.linf = std::max(out.linf, a);
    }
    out.l2 = std::sqrt(sum);
    return out;
}

double norm2(const Vector& x) { return norms(x).l2; }
double norm_inf(const Vector& x) { return norms(x).linf; }

Vector add(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector add: length mismatch");
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Vector subtract(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector subtract: length mismatch");
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("dense multiply: inner dimensions differ");
    DenseMatrix c(a.rows(), b.cols());
    // i-k-j order keeps both b and c row accesses contiguous.
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

Vector multiply(const DenseMatrix& a, const Vector& x) {
    if (a.cols() != x.size()) throw DimensionMismatch("dense matvec: shape mismatch");
    Vector y(a.rows(), Complex(0.0, 0.0));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex acc(0.0, 0.0);
        for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

DenseMatrix adjoint(const DenseMatrix& a) {
    DenseMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
    return t;
}

DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("dense add: shape mismatch");
    DenseMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.data().size(); ++i) c.data()[i] = a.data()[i] + b.data()[i];
    return c;
}

DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("dense subtract: shape mismatch");
    DenseMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.data().size(); ++i) c.data()[i] = a.data()[i] - b.data()[i];
    return c;
}

double frobenius_norm(const DenseMatrix& a) {
    double sum = 0;
    for (const Complex& v : a.data()) {
        const double m = std::abs(v);
        sum += m * m;
    }
    return std::sqrt(sum);
}

double max_abs(const DenseMatrix& a) {
    double m = 0;
    for (const Complex& v : a.data()) m = std::max(m, std::abs(v));
    return m;
}

double max_abs(const Vector& x) {
    double m = 0;
    for (const Complex& v : x) m = std::max(m, std::abs(v));
    return m;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("max_abs_diff: shape mismatch");
    double m = 0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

} // namespace rbmg
