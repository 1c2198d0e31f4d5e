#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "rbmg/io.hpp"
#include "test_support.hpp"

using namespace rbmg;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

} // namespace

TEST_SUITE("io") {

TEST_CASE("matrix market complex round trip is exact") {
    auto rng = test::seeded_rng(70);
    const SparseMatrix a = test::random_sparse(rng, 11, 7, 0.3);
    std::stringstream stream;
    write_matrix_market(stream, a);
    CHECK(read_matrix_market(stream) == a);
}

TEST_CASE("matrix market real matrices stay in the real field") {
    SparseMatrix a(2, 2, {{0, 0, Complex(1.5, 0.0)}, {1, 0, Complex(-2.0, 0.0)}});
    std::stringstream stream;
    write_matrix_market(stream, a);
    CHECK(stream.str().find("coordinate real general") != std::string::npos);
    CHECK(read_matrix_market(stream) == a);
}

TEST_CASE("matrix market symmetric and hermitian storage expands") {
    std::stringstream sym("%%MatrixMarket matrix coordinate real symmetric\n"
                          "2 2 2\n"
                          "1 1 2.0\n"
                          "2 1 -1.0\n");
    const SparseMatrix s = read_matrix_market(sym);
    CHECK(s.nnz() == 3);
    CHECK(to_dense(s)(0, 1) == Complex(-1.0, 0.0));

    std::stringstream herm("%%MatrixMarket matrix coordinate complex hermitian\n"
                           "2 2 2\n"
                           "1 1 2.0 0.0\n"
                           "2 1 1.0 3.0\n");
    const SparseMatrix h = read_matrix_market(herm);
    CHECK(to_dense(h)(0, 1) == Complex(1.0, -3.0));

    std::stringstream pat("%%MatrixMarket matrix coordinate pattern general\n"
                          "2 2 1\n"
                          "2 2\n");
    CHECK(to_dense(read_matrix_market(pat))(1, 1) == Complex(1.0, 0.0));
}

TEST_CASE("matrix market rejects malformed input") {
    std::stringstream bad_header("%%NotMatrixMarket x y z w\n");
    CHECK_THROWS_AS(read_matrix_market(bad_header), IoError);
    std::stringstream truncated("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n");
    CHECK_THROWS_AS(read_matrix_market(truncated), IoError);
    std::stringstream out_of_range("%%MatrixMarket matrix coordinate real general\n"
                                   "2 2 1\n3 1 1.0\n");
    CHECK_THROWS_AS(read_matrix_market(out_of_range), IoError);
}

TEST_CASE("vector csv round trip and bare-real lines") {
    auto rng = test::seeded_rng(71);
    const Vector x = test::random_vector(rng, 9);
    const std::string path = "test_vec_io.csv";
    write_vector_csv(path, x);
    const Vector back = read_vector_csv(path);
    REQUIRE(back.size() == x.size());
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(back[i] == x[i]);
    std::remove(path.c_str());

    std::ofstream real_only("test_vec_real.csv");
    real_only << "1.5\n-2\n";
    real_only.close();
    const Vector reals = read_vector_csv("test_vec_real.csv");
    CHECK(reals[0] == Complex(1.5, 0.0));
    CHECK(reals[1] == Complex(-2.0, 0.0));
    std::remove("test_vec_real.csv");

    CHECK_THROWS_AS(read_vector_csv("does_not_exist.csv"), IoError);
}

TEST_CASE("field dumps carry the documented headers and are deterministic") {
    auto rng = test::seeded_rng(72);
    const Vector field = test::random_vector(rng, 16);
    write_field_csv("test_field_2d.csv", field, 4);
    const std::string first = slurp("test_field_2d.csv");
    CHECK(first.rfind("i,j,re,im\n", 0) == 0);
    write_field_csv("test_field_2d.csv", field, 4);
    CHECK(slurp("test_field_2d.csv") == first); // bit-identical rewrite
    std::remove("test_field_2d.csv");

    write_field_csv("test_field_1d.csv", field, 0);
    CHECK(slurp("test_field_1d.csv").rfind("i,re,im\n", 0) == 0);
    std::remove("test_field_1d.csv");

    CHECK_THROWS_AS(write_field_csv("test_field_bad.csv", field, 5), DimensionMismatch);
    std::remove("test_field_bad.csv");
}

} // TEST_SUITE
