#include <cmath>
#include <numbers>

#include "doctest.h"

#include "rbmg/basis.hpp"
#include "rbmg/partition.hpp"
#include "test_support.hpp"

using namespace rbmg;

namespace {

SparseMatrix laplacian_2d(std::size_t side) {
    const std::size_t n = side * side;
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < side; ++i)
        for (std::size_t j = 0; j < side; ++j) {
            const std::size_t p = i * side + j;
            t.push_back({p, p, Complex(4.0, 0.0)});
            t.push_back({p, ((i + side - 1) % side) * side + j, Complex(-1.0, 0.0)});
            t.push_back({p, ((i + 1) % side) * side + j, Complex(-1.0, 0.0)});
            t.push_back({p, i * side + (j + side - 1) % side, Complex(-1.0, 0.0)});
            t.push_back({p, i * side + (j + 1) % side, Complex(-1.0, 0.0)});
        }
    return SparseMatrix(n, n, std::move(t));
}

RedBlackPartition random_partition(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<std::size_t> red(all.begin(), all.begin() + n / 2);
    std::sort(red.begin(), red.end());
    return RedBlackPartition(n, std::move(red));
}

std::size_t nnz_per_row(const SparseMatrix& a, std::size_t row) {
    return a.row_cols(row).size();
}

} // namespace

TEST_SUITE("partition") {

TEST_CASE("constructor enforces the equal-halves invariant") {
    CHECK_THROWS_AS(RedBlackPartition(5, {0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(RedBlackPartition(4, {0}), std::invalid_argument);
    CHECK_THROWS_AS(RedBlackPartition(4, {0, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(RedBlackPartition(4, {0, 4}), std::invalid_argument);
    CHECK_THROWS_AS(RedBlackPartition(4, {2, 0}), std::invalid_argument);
    const RedBlackPartition p(4, {0, 2});
    CHECK(p.black()[0] == 1);
    CHECK(p.black()[1] == 3);
    CHECK(p.sign(0) == 1.0);
    CHECK(p.sign(1) == -1.0);
}

TEST_CASE("downsample picks the color's components in order") {
    const RedBlackPartition p(4, {0, 2});
    const Vector x{Complex(1, 0), Complex(2, 0), Complex(3, 0), Complex(4, 0)};
    const Vector r = downsample(p, Color::red, x);
    CHECK(r[0] == Complex(1, 0));
    CHECK(r[1] == Complex(3, 0));
    const Vector ones(8, Complex(1.0, 0.0));
    const Vector d = downsample(RedBlackPartition::even_odd(8), Color::red, ones);
    CHECK(d.size() == 4);
    for (const Complex& v : d) CHECK(v == Complex(1.0, 0.0));
}

TEST_CASE("sine aliasing on the red grid: w_1 and w_8 downsample identically") {
    // (w_j)_i = 2/9 sin(i j pi / 9); dropping even i leaves the odd
    // positions, where w_k and w_{9-k} coincide.
    const std::size_t n = 8;
    const BiorthogonalBasis basis = sine_basis_1d(n);
    const RedBlackPartition p = RedBlackPartition::even_odd(n);
    Vector w1(n), w8(n);
    for (std::size_t i = 0; i < n; ++i) {
        w1[i] = basis.w(i, 0);
        w8[i] = basis.w(i, 7);
    }
    const Vector d1 = downsample(p, Color::red, w1);
    const Vector d8 = downsample(p, Color::red, w8);
    for (std::size_t i = 0; i < d1.size(); ++i) CHECK(std::abs(d1[i] - d8[i]) < 1e-14);
    const Vector b1 = downsample(p, Color::black, w1);
    const Vector b8 = downsample(p, Color::black, w8);
    for (std::size_t i = 0; i < b1.size(); ++i) CHECK(std::abs(b1[i] + b8[i]) < 1e-14);
}

TEST_CASE("sampling identities hold exactly for random partitions") {
    auto rng = test::seeded_rng(10);
    for (const std::size_t n : {4u, 10u, 64u}) {
        const RedBlackPartition p = random_partition(rng, n);
        const Vector x = test::random_vector(rng, n);
        const Vector y = test::random_vector(rng, n / 2);
        for (const Color c : {Color::red, Color::black}) {
            // D U = I
            const Vector round = downsample(p, c, upsample(p, c, y));
            for (std::size_t i = 0; i < y.size(); ++i) CHECK(round[i] == y[i]);
            // D_opposite U = 0
            const Vector cross = downsample(p, opposite(c), upsample(p, c, y));
            for (const Complex& v : cross) CHECK(v == Complex(0.0, 0.0));
        }
        // U D + U D (both colors) = I
        const Vector sum = add(upsample(p, Color::red, downsample(p, Color::red, x)),
                               upsample(p, Color::black, downsample(p, Color::black, x)));
        for (std::size_t i = 0; i < n; ++i) CHECK(sum[i] == x[i]);
    }
}

TEST_CASE("materialized sampling matrices agree with the index operations") {
    auto rng = test::seeded_rng(11);
    const RedBlackPartition p = random_partition(rng, 12);
    const Vector x = test::random_vector(rng, 12);
    for (const Color c : {Color::red, Color::black}) {
        const SparseMatrix d = downsampling_matrix(p, c);
        const SparseMatrix u = upsampling_matrix(p, c);
        CHECK(spmm(d, u) == SparseMatrix::identity(6));
        const Vector via_matrix = spmv(d, x);
        const Vector via_index = downsample(p, c, x);
        for (std::size_t i = 0; i < 6; ++i) CHECK(via_matrix[i] == via_index[i]);
    }
}

TEST_CASE("mirror flips off-diagonal signs of the 5-point stencil") {
    const double k = std::numbers::pi / 3.0;
    const std::size_t side = 8;
    SparseMatrix a = laplacian_2d(side);
    {
        // shift diagonal to 4 - k^2
        std::vector<Triplet> t = a.triplets();
        for (Triplet& e : t)
            if (e.row == e.col) e.value = Complex(4.0 - k * k, 0.0);
        a = SparseMatrix(side * side, side * side, std::move(t));
    }
    const RedBlackPartition p = RedBlackPartition::chessboard(side);
    const SparseMatrix m = mirror(p, a);
    for (const Triplet& e : m.triplets()) {
        if (e.row == e.col)
            CHECK(e.value == Complex(4.0 - k * k, 0.0));
        else
            CHECK(e.value == Complex(1.0, 0.0)); // all off-diagonals turn +1
    }
    CHECK(m.nnz() == a.nnz()); // pattern preserved exactly
}

TEST_CASE("mirror is an involution and preserves magnitudes") {
    auto rng = test::seeded_rng(12);
    const SparseMatrix m = test::random_sparse(rng, 10, 10, 0.4);
    const RedBlackPartition p = random_partition(rng, 10);
    const SparseMatrix mm = mirror(p, m);
    CHECK(mirror(p, mm) == m);
    CHECK(mm.nnz() == m.nnz());
    for (std::size_t i = 0; i < m.nnz(); ++i)
        CHECK(std::abs(mm.values()[i]) == std::abs(m.values()[i]));
    CHECK(mirror(p, SparseMatrix::identity(10)) == SparseMatrix::identity(10));
}

TEST_CASE("color submatrix of the 3-point circulant") {
    const double k = std::numbers::pi / 3.0;
    const std::size_t n = 12;
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < n; ++i) {
        t.push_back({i, i, Complex(4.0 - k * k, 0.0)});
        t.push_back({i, (i + n - 1) % n, Complex(-1.0, 0.0)});
        t.push_back({i, (i + 1) % n, Complex(-1.0, 0.0)});
    }
    const SparseMatrix a(n, n, std::move(t));
    const RedBlackPartition p = RedBlackPartition::even_odd(n);

    // Identity block extraction.
    CHECK(color_submatrix(p, Color::red, Color::red, SparseMatrix::identity(n))
          == SparseMatrix::identity(n / 2));

    // The stencil never connects even to even: the red-red block is diagonal.
    const SparseMatrix rr = color_submatrix(p, Color::red, Color::red, a);
    CHECK(is_diagonal(rr, 1e-300));
    for (const Triplet& e : rr.triplets()) CHECK(e.value == Complex(4.0 - k * k, 0.0));

    // Red-black block against the dense extraction oracle.
    const SparseMatrix rb = color_submatrix(p, Color::red, Color::black, a);
    const DenseMatrix dense = to_dense(a);
    for (std::size_t i = 0; i < n / 2; ++i) {
        CHECK(nnz_per_row(rb, i) == 2);
        for (std::size_t j = 0; j < n / 2; ++j)
            CHECK(to_dense(rb)(i, j) == dense(p.red()[i], p.black()[j]));
    }
}

TEST_CASE("mirror-coarsening stencil growth: 5 to 9 to 13 points") {
    // Additive chain on the periodic Laplacian: A_r = D (A A*) U on the
    // chessboard, then once more with row parity on the rotated grid.
    const std::size_t side = 16;
    const SparseMatrix a = laplacian_2d(side);
    const RedBlackPartition chess = RedBlackPartition::chessboard(side);
    CHECK(nnz_per_row(a, 0) == 5);

    const SparseMatrix aas = spmm(a, mirror(chess, a));
    // Dense multiplication oracle for the product itself.
    const DenseMatrix oracle = multiply(to_dense(a), to_dense(mirror(chess, a)));
    CHECK(max_abs_diff(to_dense(aas), oracle) < 1e-12);
    for (std::size_t i = 0; i < aas.rows(); ++i) CHECK(nnz_per_row(aas, i) == 9);

    const SparseMatrix a_r = color_submatrix(chess, Color::red, Color::red, aas);
    for (std::size_t i = 0; i < a_r.rows(); ++i) CHECK(nnz_per_row(a_r, i) == 9);

    const RedBlackPartition rot = RedBlackPartition::row_parity(side, side / 2);
    const SparseMatrix a_rr =
        color_submatrix(rot, Color::red, Color::red, spmm(a_r, mirror(rot, a_r)));
    for (std::size_t i = 0; i < a_rr.rows(); ++i) CHECK(nnz_per_row(a_rr, i) == 13);
}

TEST_CASE("partition JSON round trip") {
    const RedBlackPartition p = RedBlackPartition::chessboard(4);
    const RedBlackPartition q = RedBlackPartition::from_json(p.to_json());
    CHECK(p == q);
}

} // TEST_SUITE
