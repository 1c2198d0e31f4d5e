#include <cmath>
#include <numbers>

#include "doctest.h"

#include "rbmg/lu.hpp"
#include "rbmg/multigrid.hpp"
#include "rbmg/problems.hpp"
#include "rbmg/twogrid.hpp"
#include "test_support.hpp"

using namespace rbmg;

namespace {
const double kWave = std::numbers::pi / 3.0;
}

TEST_SUITE("multigrid") {

TEST_CASE("base case returns the dense LU result") {
    auto rng = test::seeded_rng(50);
    const ProblemInstance p = helmholtz_periodic_1d(16, kWave); // == base size
    const Vector f = test::random_vector(rng, 16);
    const SolveReport report = dmg_multiplicative(p.matrix, f, p.hierarchy);
    const Vector exact = dense_lu_solve(to_dense(p.matrix), f);
    for (std::size_t i = 0; i < 16; ++i) CHECK(report.solution[i] == exact[i]);
    REQUIRE(report.levels_visited.size() == 1);
    CHECK(report.levels_visited[0].size == 16);
}

TEST_CASE("1D multiplicative: oracle match and V-cycle degeneration") {
    const std::size_t n = 32;
    const ProblemInstance p = helmholtz_periodic_1d(n, kWave);
    Vector f(n, Complex(0.0, 0.0));
    f[0] = 1.0;
    const SolveReport report = dmg_multiplicative(p.matrix, f, p.hierarchy);
    const Vector exact = dense_lu_solve(to_dense(p.matrix), f);
    CHECK(test::rel_error(report.solution, exact) < 1e-9);
    CHECK(report.relative_residual < 1e-9);
    // Every red coarse matrix is diagonal: the W-cycle degenerates.
    bool saw_red = false;
    for (const LevelVisit& v : report.levels_visited) {
        if (!v.path.empty() && v.path.back() == 'r') {
            saw_red = true;
            CHECK(v.was_diagonal);
        }
    }
    CHECK(saw_red);
}

TEST_CASE("1D additive matches the oracle") {
    const std::size_t n = 32;
    const ProblemInstance p = helmholtz_periodic_1d(n, kWave);
    auto rng = test::seeded_rng(51);
    const Vector f = test::random_vector(rng, n);
    const SolveReport report = dmg_additive(p.matrix, f, p.hierarchy);
    CHECK(test::rel_error(report.solution, dense_lu_solve(to_dense(p.matrix), f)) < 1e-9);
    // Root intermediates sum to the solution.
    REQUIRE(report.intermediates.size() == 2);
    const Vector sum = add(report.intermediates[0].second, report.intermediates[1].second);
    for (std::size_t i = 0; i < n; ++i) CHECK(sum[i] == report.solution[i]);
}

TEST_CASE("2D solvers match the oracle through two coarsening shapes") {
    const std::size_t side = 16; // 256 unknowns, four levels to the base case
    const ProblemInstance p = helmholtz_periodic_2d(side, kWave);
    auto rng = test::seeded_rng(52);
    const Vector f = test::random_vector(rng, side * side);
    const Vector exact = dense_lu_solve(to_dense(p.matrix), f);
    CHECK(test::rel_error(dmg_multiplicative(p.matrix, f, p.hierarchy).solution, exact) < 1e-9);
    CHECK(test::rel_error(dmg_additive(p.matrix, f, p.hierarchy).solution, exact) < 1e-9);
}

TEST_CASE("multiplicative intermediates reproduce the nested/correction split") {
    const std::size_t side = 8;
    const ProblemInstance p = helmholtz_periodic_2d(side, kWave);
    auto rng = test::seeded_rng(53);
    const Vector f = test::random_vector(rng, side * side);
    const SolveReport report = dmg_multiplicative(p.matrix, f, p.hierarchy);
    REQUIRE(report.intermediates.size() == 3);
    CHECK(report.intermediates[0].first == "v0");
    CHECK(report.intermediates[1].first == "r");
    CHECK(report.intermediates[2].first == "e0");
    const Vector& v0 = report.intermediates[0].second;
    const Vector& r = report.intermediates[1].second;
    const Vector& e0 = report.intermediates[2].second;
    // r = f - A v0 and v = v0 + e0, bit-for-bit.
    const Vector r_check = subtract(f, spmv(p.matrix, v0));
    const Vector v_check = add(v0, e0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(r[i] == r_check[i]);
        CHECK(v_check[i] == report.solution[i]);
    }
}

TEST_CASE("level records expose the coarse stencil growth") {
    const std::size_t side = 16;
    const ProblemInstance p = helmholtz_periodic_2d(side, kWave);
    Vector f(side * side, Complex(0.0, 0.0));
    f[0] = 1.0;
    const SolveReport report = dmg_additive(p.matrix, f, p.hierarchy);
    auto width_of = [&](const std::string& path) -> std::size_t {
        for (const LevelVisit& v : report.levels_visited)
            if (v.path == path) return v.max_row_nonzeros;
        return 0;
    };
    CHECK(width_of("") == 5);
    CHECK(width_of("b") == 9);
    CHECK(width_of("bb") == 13);
}

TEST_CASE("dirichlet family solves through the single-level hierarchy") {
    for (const std::size_t n : {8u, 32u, 64u}) {
        const ProblemInstance p = dirichlet_laplacian_1d(n);
        auto rng = test::seeded_rng(54 + n);
        const Vector f = test::random_vector(rng, n);
        const Vector exact = dense_lu_solve(to_dense(p.matrix), f);
        CHECK(test::rel_error(dmg_multiplicative(p.matrix, f, p.hierarchy).solution, exact)
              < 1e-9);
        CHECK(test::rel_error(dmg_additive(p.matrix, f, p.hierarchy).solution, exact) < 1e-9);
    }
}

TEST_CASE("exhausted hierarchy is a typed error") {
    const ProblemInstance p = helmholtz_periodic_1d(64, kWave);
    // One level only, base size 16: the level-1 grids of size 32 have no
    // partition and are too big for the base case.
    const PartitionHierarchy truncated(
        [](std::size_t n, std::size_t) { return RedBlackPartition::even_odd(n); }, 16, 1);
    Vector f(64, Complex(0.0, 0.0));
    f[0] = 1.0;
    CHECK_THROWS_AS(dmg_multiplicative(p.matrix, f, truncated), HierarchyExhausted);
}

TEST_CASE("singular coarse systems surface with level and path") {
    // k = 0 makes the periodic Laplacian singular; the zero eigenvalue
    // reaches a coarse system eventually.
    const ProblemInstance p = helmholtz_periodic_1d(64, 0.0);
    Vector f(64, Complex(0.0, 0.0));
    f[0] = 1.0;
    try {
        dmg_multiplicative(p.matrix, f, p.hierarchy);
        FAIL("expected SingularCoarseMatrix");
    } catch (const SingularCoarseMatrix& err) {
        CHECK(err.level() > 0);
        CHECK(!err.path().empty());
    }
}

TEST_CASE("multichannel depth 1 collapses to the additive two-grid scheme") {
    const std::size_t n = 32;
    const ProblemInstance p = helmholtz_periodic_1d(n, kWave);
    auto rng = test::seeded_rng(55);
    const Vector f = test::random_vector(rng, n);
    const MultichannelReport multi = dmg_additive_multichannel(p.matrix, f, p.hierarchy, 1);
    const AdditiveRun two_grid = solve_additive_2g(
        p.matrix, TwoGridConfig::additive_standard(RedBlackPartition::even_odd(n)), f);
    CHECK(test::rel_error(multi.solution, two_grid.solution) < 1e-12);
    REQUIRE(multi.channels.size() == 2);
    CHECK(multi.channels[0].path == "r");
    CHECK(multi.channels[1].path == "b");
    // Channel fields are the interpolated per-grid solutions.
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(multi.channels[0].interpolated[i] - two_grid.red_component[i]) < 1e-12);
        CHECK(std::abs(multi.channels[1].interpolated[i] - two_grid.black_component[i]) < 1e-12);
    }
}

TEST_CASE("multichannel equals the recursive additive driver") {
    const std::size_t side = 16;
    const ProblemInstance p = helmholtz_periodic_2d(side, kWave);
    auto rng = test::seeded_rng(56);
    const Vector f = test::random_vector(rng, side * side);
    const SolveReport additive = dmg_additive(p.matrix, f, p.hierarchy);
    for (const std::size_t depth : {1u, 2u, 3u}) {
        const MultichannelReport multi =
            dmg_additive_multichannel(p.matrix, f, p.hierarchy, depth);
        CHECK(multi.channels.size() == (1u << depth));
        CHECK(test::rel_error(multi.solution, additive.solution) < 1e-10);
    }
}

TEST_CASE("point-patch source goes dark in some depth-3 channels") {
    const std::size_t side = 16;
    const ProblemInstance p = helmholtz_periodic_2d(side, kWave);
    const Vector f = make_source(SourceSpec{SourceSpec::Kind::point_patch, ""}, p);
    const MultichannelReport multi = dmg_additive_multichannel(p.matrix, f, p.hierarchy, 3);
    std::size_t zero_channels = 0;
    for (const ChannelSolution& c : multi.channels) zero_channels += c.zero_source ? 1 : 0;
    CHECK(zero_channels >= 1);
    CHECK(multi.relative_residual < 1e-9);
}

TEST_CASE("channel order is fixed and the run is thread-count invariant") {
    const std::size_t side = 8;
    const ProblemInstance p = helmholtz_periodic_2d(side, kWave);
    auto rng = test::seeded_rng(57);
    const Vector f = test::random_vector(rng, side * side);

    const MultichannelReport multi = dmg_additive_multichannel(p.matrix, f, p.hierarchy, 2);
    REQUIRE(multi.channels.size() == 4);
    CHECK(multi.channels[0].path == "rr");
    CHECK(multi.channels[1].path == "rb");
    CHECK(multi.channels[2].path == "br");
    CHECK(multi.channels[3].path == "bb");

    DmgOptions serial;
    DmgOptions parallel;
    parallel.threads = 4;
    const SolveReport one = dmg_additive(p.matrix, f, p.hierarchy, serial);
    const SolveReport four = dmg_additive(p.matrix, f, p.hierarchy, parallel);
    REQUIRE(one.solution.size() == four.solution.size());
    for (std::size_t i = 0; i < one.solution.size(); ++i)
        CHECK(one.solution[i] == four.solution[i]); // bitwise
    CHECK(one.multiplications == four.multiplications);
}

TEST_CASE("count ratios stay within the n log n recursion bound") {
    auto instance = [](std::size_t n) {
        const ProblemInstance p = helmholtz_periodic_1d(n, kWave);
        return std::make_pair(p.matrix, p.hierarchy);
    };
    auto impulse = [](std::size_t n) {
        Vector f(n, Complex(0.0, 0.0));
        f[0] = 1.0;
        return f;
    };
    const std::vector<std::size_t> sizes{64, 128, 256, 512};
    const auto mult = count_complexity(sizes, DmgMethod::multiplicative, instance, impulse);
    const auto addi = count_complexity(sizes, DmgMethod::additive, instance, impulse);
    for (std::size_t i = 1; i < sizes.size(); ++i) {
        CHECK(static_cast<double>(mult[i].multiplications)
              <= 2.5 * static_cast<double>(mult[i - 1].multiplications));
        CHECK(static_cast<double>(addi[i].multiplications)
              <= 2.5 * static_cast<double>(addi[i - 1].multiplications));
    }
    // Mirror products on both branches make the additive scheme costlier.
    for (std::size_t i = 0; i < sizes.size(); ++i)
        CHECK(addi[i].multiplications >= mult[i].multiplications);
    // The multiplicative 1D sweep is all V-cycles on the red side.
    for (const ComplexityRow& row : mult) CHECK(row.diagonal_fraction > 0.3);

    // A base-case-only size is a single dense solve, constant-sized count.
    const auto base_only = count_complexity({16}, DmgMethod::multiplicative, instance, impulse);
    MulCounter lu_count;
    LuFactorization(to_dense(instance(16).first), &lu_count)
        .solve(impulse(16), &lu_count);
    CHECK(base_only[0].multiplications == lu_count.value);
}

} // TEST_SUITE
