#include "rbmg/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rbmg/errors.hpp"
#include "rbmg/io.hpp"
#include "rbmg/lu.hpp"

namespace rbmg {

ProblemInstance helmholtz_periodic_1d(std::size_t n, double k, std::size_t base_size) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("helmholtz_periodic_1d: n must be even and >= 2");
    const Complex diag(2.0 - k * k, 0.0);
    std::vector<Triplet> t;
    t.reserve(3 * n);
    for (std::size_t i = 0; i < n; ++i) {
        t.push_back({i, i, diag});
        t.push_back({i, (i + n - 1) % n, Complex(-1.0, 0.0)});
        t.push_back({i, (i + 1) % n, Complex(-1.0, 0.0)});
    }
    ProblemInstance p{"helmholtz1d",
                      SparseMatrix(n, n, std::move(t)),
                      PartitionHierarchy::ring(base_size),
                      Geometry::ring,
                      n,
                      k,
                      [n] { return dft_basis_1d(n); }};
    return p;
}

ProblemInstance helmholtz_periodic_2d(std::size_t side, double k, std::size_t base_size) {
    if (side < 2 || side % 2 != 0)
        throw std::invalid_argument("helmholtz_periodic_2d: side must be even and >= 2");
    const std::size_t n = side * side;
    const Complex diag(4.0 - k * k, 0.0);
    std::vector<Triplet> t;
    t.reserve(5 * n);
    for (std::size_t i = 0; i < side; ++i)
        for (std::size_t j = 0; j < side; ++j) {
            const std::size_t p = i * side + j;
            t.push_back({p, p, diag});
            t.push_back({p, ((i + side - 1) % side) * side + j, Complex(-1.0, 0.0)});
            t.push_back({p, ((i + 1) % side) * side + j, Complex(-1.0, 0.0)});
            t.push_back({p, i * side + (j + side - 1) % side, Complex(-1.0, 0.0)});
            t.push_back({p, i * side + (j + 1) % side, Complex(-1.0, 0.0)});
        }
    SparseMatrix a(n, n, std::move(t));
    if (side == 32) {
        // The reference instance: invertibility is verified, not assumed.
        LuFactorization check(to_dense(a));
    }
    ProblemInstance p{"helmholtz2d",
                      std::move(a),
                      PartitionHierarchy::torus(base_size),
                      Geometry::torus,
                      side,
                      k,
                      [side] { return dft_basis_2d(side); }};
    return p;
}

ProblemInstance dirichlet_laplacian_1d(std::size_t n) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("dirichlet_laplacian_1d: n must be even and >= 2");
    std::vector<Triplet> t;
    t.reserve(3 * n);
    for (std::size_t i = 0; i < n; ++i) {
        t.push_back({i, i, Complex(2.0, 0.0)});
        if (i > 0) t.push_back({i, i - 1, Complex(-1.0, 0.0)});
        if (i + 1 < n) t.push_back({i, i + 1, Complex(-1.0, 0.0)});
    }
    ProblemInstance p{"dirichlet1d",
                      SparseMatrix(n, n, std::move(t)),
                      PartitionHierarchy::single_level(n),
                      Geometry::ring,
                      n,
                      0.0,
                      [n] { return sine_basis_1d(n); }};
    return p;
}

SourceSpec SourceSpec::parse(const std::string& name) {
    SourceSpec spec;
    if (name == "two-frequency" || name == "two_frequency")
        spec.kind = Kind::two_frequency;
    else if (name == "point-patch" || name == "point_patch")
        spec.kind = Kind::point_patch;
    else if (name == "unit-impulse" || name == "unit_impulse")
        spec.kind = Kind::unit_impulse;
    else if (name.rfind("file:", 0) == 0) {
        spec.kind = Kind::file;
        spec.path = name.substr(5);
    } else
        throw std::invalid_argument("unknown source kind '" + name + "'");
    return spec;
}

Vector make_source(const SourceSpec& spec, const ProblemInstance& problem) {
    const std::size_t n = problem.matrix.rows();
    switch (spec.kind) {
    case SourceSpec::Kind::unit_impulse: {
        Vector f(n, Complex(0.0, 0.0));
        f[0] = 1.0;
        return f;
    }
    case SourceSpec::Kind::two_frequency: {
        if (problem.geometry != Geometry::torus)
            throw std::invalid_argument("two-frequency source needs a 2D torus problem");
        const std::size_t side = problem.extent;
        if (side % 4 != 0)
            throw std::invalid_argument("two-frequency source needs side divisible by 4");
        Vector f(n);
        const double w = 2.0 * std::numbers::pi / static_cast<double>(side);
        const double high = w * static_cast<double>(side / 4);
        for (std::size_t i = 0; i < side; ++i)
            for (std::size_t j = 0; j < side; ++j)
                f[i * side + j] = std::sin(w * static_cast<double>(i))
                                      * std::sin(w * static_cast<double>(j))
                                  + std::sin(high * static_cast<double>(i))
                                        * std::sin(high * static_cast<double>(j));
        return f;
    }
    case SourceSpec::Kind::point_patch: {
        if (problem.geometry != Geometry::torus)
            throw std::invalid_argument("point-patch source needs a 2D torus problem");
        const std::size_t side = problem.extent;
        Vector f(n, Complex(0.0, 0.0));
        // The four nodes straddling the exact center.
        for (std::size_t i = side / 2 - 1; i <= side / 2; ++i)
            for (std::size_t j = side / 2 - 1; j <= side / 2; ++j) f[i * side + j] = 1.0;
        return f;
    }
    case SourceSpec::Kind::file: {
        Vector f = read_vector_csv(spec.path);
        if (f.size() != n)
            throw std::invalid_argument("source file length does not match the problem size");
        return f;
    }
    }
    throw std::invalid_argument("make_source: unreachable");
}

} // namespace rbmg
