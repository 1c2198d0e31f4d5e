#pragma once

#include <cstddef>
#include <functional>
#include <string>

#include "rbmg/basis.hpp"
#include "rbmg/hierarchy.hpp"
#include "rbmg/sparse.hpp"

namespace rbmg {

enum class Geometry { ring, torus };

/// A built-in system together with the partition hierarchy that drives the
/// recursive solvers and (when known analytically) its eigenbasis handle.
struct ProblemInstance {
    std::string family;
    SparseMatrix matrix;
    PartitionHierarchy hierarchy;
    Geometry geometry = Geometry::ring;
    std::size_t extent = 0; // n for a ring, side length for a torus
    double wavenumber = 0;
    std::function<BiorthogonalBasis()> eigenbasis; // empty when not analytic
};

/// Periodic 1D Helmholtz: circulant with diagonal 2 - k^2 and -1 at the two
/// wrap-around neighbours. Hierarchy: evens-of-evens; eigenbasis: 1D DFT.
ProblemInstance helmholtz_periodic_1d(std::size_t n, double k, std::size_t base_size = 16);

/// Periodic 2D Helmholtz on a side-by-side torus: 5-point stencil with
/// diagonal 4 - k^2. Hierarchy: chessboard alternating with row parity on
/// the rotated grids; eigenbasis: 2D DFT. At side 32 the generator verifies
/// invertibility through the LU oracle.
ProblemInstance helmholtz_periodic_2d(std::size_t side, double k, std::size_t base_size = 16);

/// 1D Dirichlet Laplacian: tridiagonal {-1, 2, -1} without wrap. Eigenbasis
/// is the sine basis with the rescaled dual; the hierarchy offers only the
/// fine-level split (the downsampled sine basis has no alias pairing).
ProblemInstance dirichlet_laplacian_1d(std::size_t n);

struct SourceSpec {
    enum class Kind { two_frequency, point_patch, unit_impulse, file };
    Kind kind = Kind::unit_impulse;
    std::string path; // file kind only

    static SourceSpec parse(const std::string& name); // CLI token
};

/// Builds the source field for a problem:
///   two_frequency: sin(2 pi i/N) sin(2 pi j/N)
///                  + sin(2 pi (N/4) i/N) sin(2 pi (N/4) j/N) on the torus
///                  (the low-plus-high superposition; exact fields at N=32),
///   point_patch:   1 on the four nodes straddling the torus center,
///   unit_impulse:  e_0,
///   file:          vector read from CSV (re,im per line).
Vector make_source(const SourceSpec& spec, const ProblemInstance& problem);

} // namespace rbmg
