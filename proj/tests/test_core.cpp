#include <cmath>
#include <numbers>

#include "doctest.h"

#include "rbmg/lu.hpp"
#include "rbmg/sparse.hpp"
#include "test_support.hpp"

using namespace rbmg;

namespace {

SparseMatrix circulant_3point(std::size_t n, Complex diag) {
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < n; ++i) {
        t.push_back({i, i, diag});
        t.push_back({i, (i + n - 1) % n, Complex(-1.0, 0.0)});
        t.push_back({i, (i + 1) % n, Complex(-1.0, 0.0)});
    }
    return SparseMatrix(n, n, std::move(t));
}

} // namespace

TEST_SUITE("core") {

TEST_CASE("canonical form sums duplicates and drops exact zeros") {
    SparseMatrix a(2, 2,
                   {{0, 0, Complex(1.0, 0.0)},
                    {0, 0, Complex(2.0, 0.0)},
                    {1, 1, Complex(0.0, 0.0)},
                    {1, 0, Complex(3.0, 0.0)},
                    {1, 0, Complex(-3.0, 0.0)}});
    CHECK(a.nnz() == 1);
    CHECK(a.triplets()[0].value == Complex(3.0, 0.0));
    SparseMatrix b(2, 2, {{0, 0, Complex(3.0, 0.0)}});
    CHECK(a == b);
}

TEST_CASE("construction rejects bad indices and non-finite values") {
    CHECK_THROWS_AS(SparseMatrix(2, 2, {{2, 0, Complex(1.0, 0.0)}}), std::invalid_argument);
    CHECK_THROWS_AS(SparseMatrix(2, 2, {{0, 0, Complex(std::nan(""), 0.0)}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(SparseMatrix(2, 2, {{0, 0, Complex(0.0, INFINITY)}}), std::invalid_argument);
}

TEST_CASE("spmv identity and zero") {
    auto rng = test::seeded_rng(1);
    const Vector x = test::random_vector(rng, 4);
    const Vector y = spmv(SparseMatrix::identity(4), x);
    for (std::size_t i = 0; i < 4; ++i) CHECK(y[i] == x[i]);
    const Vector z = spmv(SparseMatrix::zero(4, 4), x);
    for (std::size_t i = 0; i < 4; ++i) CHECK(z[i] == Complex(0.0, 0.0));
    CHECK_THROWS_AS(spmv(SparseMatrix::identity(4), Vector(3)), DimensionMismatch);
}

TEST_CASE("spmv on the 3-point circulant sums rows to 2 - k^2") {
    const double k = std::numbers::pi / 3.0;
    const SparseMatrix a = circulant_3point(12, Complex(4.0 - k * k, 0.0));
    const Vector ones(12, Complex(1.0, 0.0));
    const Vector y = spmv(a, ones);
    // Row-sum oracle: diagonal plus the two off-diagonal coefficients.
    const Complex expect(4.0 - k * k - 2.0, 0.0);
    for (const Complex& v : y) CHECK(std::abs(v - expect) < 1e-15);
}

TEST_CASE("spmv agrees with the dense oracle on random matrices") {
    auto rng = test::seeded_rng(2);
    for (const std::size_t n : {3u, 17u, 64u}) {
        const SparseMatrix a = test::random_sparse(rng, n, n, 0.3);
        const Vector x = test::random_vector(rng, n);
        const Vector got = spmv(a, x);
        const Vector want = test::dense_matvec_oracle(to_dense(a), x);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(got[i] - want[i]) < 1e-13);
    }
}

TEST_CASE("spmm identity, permutation inverse and associativity") {
    auto rng = test::seeded_rng(3);
    const SparseMatrix a = test::random_sparse(rng, 9, 9, 0.4);
    CHECK(spmm(a, SparseMatrix::identity(9)) == a);

    // A cyclic permutation times its inverse.
    std::vector<Triplet> p, pinv;
    for (std::size_t i = 0; i < 9; ++i) {
        p.push_back({i, (i + 1) % 9, Complex(1.0, 0.0)});
        pinv.push_back({(i + 1) % 9, i, Complex(1.0, 0.0)});
    }
    CHECK(spmm(SparseMatrix(9, 9, std::move(p)), SparseMatrix(9, 9, std::move(pinv)))
          == SparseMatrix::identity(9));

    for (int trial = 0; trial < 5; ++trial) {
        const SparseMatrix x = test::random_sparse(rng, 8, 10, 0.35);
        const SparseMatrix y = test::random_sparse(rng, 10, 7, 0.35);
        const SparseMatrix z = test::random_sparse(rng, 7, 9, 0.35);
        const SparseMatrix left = spmm(spmm(x, y), z);
        const SparseMatrix right = spmm(x, spmm(y, z));
        CHECK(frobenius_norm(to_dense(left)) > 0);
        double dev = max_abs_diff(to_dense(left), to_dense(right));
        CHECK(dev < 1e-12);
    }
}

TEST_CASE("spmm drop tolerance removes small entries") {
    const SparseMatrix a(2, 2, {{0, 0, Complex(1.0, 0.0)}, {1, 1, Complex(1e-9, 0.0)}});
    const SparseMatrix b = SparseMatrix::identity(2);
    CHECK(spmm(a, b).nnz() == 2);        // default keeps everything
    CHECK(spmm(a, b, 1e-8).nnz() == 1);  // below-tolerance product dropped
}

TEST_CASE("spmm counts elementary products") {
    MulCounter counter;
    const SparseMatrix a(2, 2, {{0, 0, Complex(1, 0)}, {0, 1, Complex(2, 0)}});
    const SparseMatrix b(2, 2, {{0, 0, Complex(1, 0)}, {1, 0, Complex(1, 0)},
                                {1, 1, Complex(1, 0)}});
    spmm(a, b, 0.0, &counter);
    CHECK(counter.value == 3); // row 0 of a hits rows 0 (1 entry) and 1 (2 entries) of b
}

TEST_CASE("conj_transpose involution and hermitian fixed point") {
    auto rng = test::seeded_rng(4);
    const SparseMatrix m = test::random_sparse(rng, 3, 3, 0.8);
    CHECK(conj_transpose(conj_transpose(m)) == m);

    SparseMatrix herm(2, 2,
                      {{0, 0, Complex(2.0, 0.0)},
                       {0, 1, Complex(1.0, 3.0)},
                       {1, 0, Complex(1.0, -3.0)},
                       {1, 1, Complex(5.0, 0.0)}});
    CHECK(conj_transpose(herm) == herm);

    SparseMatrix sym(2, 2,
                     {{0, 0, Complex(2.0, 0.0)},
                      {0, 1, Complex(-1.0, 0.0)},
                      {1, 0, Complex(-1.0, 0.0)},
                      {1, 1, Complex(2.0, 0.0)}});
    CHECK(conj_transpose(sym) == sym);
}

TEST_CASE("norms") {
    CHECK(norms(Vector(5, Complex(0.0, 0.0))).l2 == 0.0);
    CHECK(norms(Vector(5, Complex(0.0, 0.0))).linf == 0.0);
    Vector e0(4, Complex(0.0, 0.0));
    e0[0] = 1.0;
    CHECK(norms(e0).l2 == 1.0);
    CHECK(norms(e0).linf == 1.0);
    const Vector v{Complex(3.0, 0.0), Complex(4.0, 0.0)};
    CHECK(norms(v).l2 == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(norms(v).linf == 4.0);
}

TEST_CASE("dense LU solves the trivial systems") {
    const Vector f{Complex(2.0, 1.0), Complex(4.0, -1.0)};
    const Vector x = dense_lu_solve(DenseMatrix::identity(2), f);
    CHECK(x[0] == f[0]);
    CHECK(x[1] == f[1]);

    DenseMatrix diag(2, 2);
    diag(0, 0) = 2.0;
    diag(1, 1) = 4.0;
    const Vector y = dense_lu_solve(diag, Vector{Complex(2.0, 0.0), Complex(4.0, 0.0)});
    CHECK(std::abs(y[0] - Complex(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(y[1] - Complex(1.0, 0.0)) < 1e-15);
}

TEST_CASE("dense LU residual on the reference Helmholtz system") {
    const double k = std::numbers::pi / 3.0;
    const SparseMatrix a = circulant_3point(8, Complex(2.0 - k * k, 0.0));
    Vector f(8, Complex(0.0, 0.0));
    f[0] = 1.0;
    const Vector x = dense_lu_solve(to_dense(a), f);
    const Vector r = subtract(f, spmv(a, x));
    CHECK(norm2(r) / norm2(f) < 1e-12);
}

TEST_CASE("dense LU residual bound on random well-conditioned systems") {
    auto rng = test::seeded_rng(5);
    for (const std::size_t n : {16u, 64u, 256u}) {
        const SparseMatrix a = test::random_dominant(rng, n, 0.1);
        const Vector f = test::random_vector(rng, n);
        const Vector x = dense_lu_solve(to_dense(a), f);
        const Vector r = subtract(f, spmv(a, x));
        CHECK(norm2(r) <= 1e-11 * norm2(f));
    }
}

TEST_CASE("dense LU rejects singular systems") {
    DenseMatrix zero(3, 3);
    CHECK_THROWS_AS(dense_lu_solve(zero, Vector(3, Complex(1.0, 0.0))), SingularMatrix);

    // Rank-deficient: two identical rows.
    DenseMatrix rank2(2, 2);
    rank2(0, 0) = rank2(1, 0) = 1.0;
    rank2(0, 1) = rank2(1, 1) = 2.0;
    CHECK_THROWS_AS(dense_lu_solve(rank2, Vector(2, Complex(1.0, 0.0))), SingularMatrix);

    // A pivot below 1e-13 of the largest entry trips the threshold.
    DenseMatrix tiny = DenseMatrix::identity(2);
    tiny(1, 1) = 1e-15;
    CHECK_THROWS_AS(dense_lu_solve(tiny, Vector(2, Complex(1.0, 0.0))), SingularMatrix);
}

TEST_CASE("LU counts multiplications") {
    MulCounter counter;
    DenseMatrix a(2, 2);
    a(0, 0) = 4.0;
    a(0, 1) = 1.0;
    a(1, 0) = 2.0;
    a(1, 1) = 3.0;
    LuFactorization lu(a, &counter);
    CHECK(counter.value == 2); // one division, one update
    lu.solve(Vector{Complex(1.0, 0.0), Complex(2.0, 0.0)}, &counter);
    CHECK(counter.value == 2 + 4); // forward 1 multiply, backward 1 multiply + 2 divisions
}

} // TEST_SUITE
