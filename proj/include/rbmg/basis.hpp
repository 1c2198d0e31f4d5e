#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "rbmg/dense.hpp"
#include "rbmg/hierarchy.hpp"
#include "rbmg/partition.hpp"

namespace rbmg {

/// Paired right/left eigenvector sets with a low/high frequency split.
/// Columns of w are right eigenvectors, columns of v left eigenvectors;
/// V^H W = I within tolerance. low[j] and high[j] index the two members of
/// the j-th alias pair. Used by the verification paths only; the solvers
/// never touch eigenvectors.
struct BiorthogonalBasis {
    DenseMatrix w;
    DenseMatrix v;
    std::vector<std::size_t> low;
    std::vector<std::size_t> high;

    std::size_t size() const { return w.rows(); }
};

/// 1D harmonic basis W(i,j) = exp(2*pi*sqrt(-1)*i*j/n), V = W/n; pair
/// j <-> j+n/2, low = smaller frequency index.
BiorthogonalBasis dft_basis_1d(std::size_t n);

/// 2D harmonic basis on a side-by-side torus, column (p,q) at p*side+q,
/// V = W/n; pair (p,q) <-> (p+side/2, q+side/2) mod side. The low member
/// of each pair is the one with smaller wrap-aware frequency distance
/// min(p, side-p) + min(q, side-q), ties broken lexicographically.
BiorthogonalBasis dft_basis_2d(std::size_t side);

/// Sine basis (w_j)_i = 2/(n+1) sin((i+1)(j+1)pi/(n+1)) with the
/// biorthogonal dual V = (n+1)/2 * W; pair j <-> n-1-j.
BiorthogonalBasis sine_basis_1d(std::size_t n);

struct AliasCheckReport {
    DenseMatrix pattern_red;   // V^H (U D)_red W in (low, high) ordering
    DenseMatrix pattern_black; // V^H (U D)_black W in (low, high) ordering
    double max_deviation_red = 0;
    double max_deviation_black = 0;
    double completion_deviation = 0; // max |pattern_red + pattern_black - I|
    double biorthogonality_error = 0;
    bool passes = false;
};

/// Checks the red and black harmonic aliasing patterns of a basis against
/// 1/2 [I I; I I] and 1/2 [I -I; -I I]. Throws NotBiorthogonal when
/// V^H W deviates from I beyond tol, DimensionMismatch on size mismatch.
AliasCheckReport check_rbhap(const BiorthogonalBasis& basis, const RedBlackPartition& p,
                             double tol = 1e-10);

struct SurjectiveFormReport {
    double max_deviation = 0;
    bool passes = false;
};

/// The equivalent columnwise form: D_red W_L = D_red W_H,
/// D_black W_L = -D_black W_H, and the same two identities for V.
SurjectiveFormReport check_surjective_form(const BiorthogonalBasis& basis,
                                           const RedBlackPartition& p, double tol = 1e-10);

/// Searches for the unique perfect alias pairing of the basis columns under
/// the partition (equal red down-samples, negated black down-samples, for
/// both W and V). Returns nothing when no perfect matching exists. The low
/// member of each discovered pair is the smaller column index.
std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> discover_alias_split(
    const DenseMatrix& w, const DenseMatrix& v, const RedBlackPartition& p, double tol = 1e-8);

struct MultigridBasisLevel {
    std::size_t level = 0;
    std::size_t size = 0;
    double biorthogonality_error = 0;
    bool split_found = false;
    double max_deviation_red = 0;
    double max_deviation_black = 0;
    bool passes = false;
};

/// Recursively verifies that the basis stays a red-black harmonic aliasing
/// basis under red coarsening: at each level runs check_rbhap, then forms
/// the next level from the red-down-sampled low columns (dual rescaled by 2
/// so V^H W = I is preserved) and recurses. Pairings below the fine level
/// are discovered numerically. Throws HierarchyExhausted when the hierarchy
/// offers no partition for a level.
std::vector<MultigridBasisLevel> check_multigrid_harmonic_basis(const BiorthogonalBasis& basis,
                                                                const PartitionHierarchy& hierarchy,
                                                                std::size_t levels,
                                                                double tol = 1e-10);

/// Filter symbols of a matrix in the basis: the diagonal of V^H F W split
/// into (low, high) pair order. Throws NotAFilter when the off-diagonal
/// leakage exceeds leak_factor * ||F||_F.
struct FilterSymbols {
    Vector low;
    Vector high;
};
FilterSymbols extract_symbols(const SparseMatrix& filter, const BiorthogonalBasis& basis,
                              double leak_factor = 1e-8);

/// Dense product V^H M W without reordering (columns in natural order).
DenseMatrix basis_transform(const SparseMatrix& m, const BiorthogonalBasis& basis);

} // namespace rbmg
