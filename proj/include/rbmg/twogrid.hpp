#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "rbmg/basis.hpp"
#include "rbmg/counting.hpp"
#include "rbmg/filterbank.hpp"
#include "rbmg/lu.hpp"
#include "rbmg/partition.hpp"
#include "rbmg/sparse.hpp"

namespace rbmg {

/// Inter-grid filter slot: the symbolic forms never materialize an n-by-n
/// product on the solve path (identity is a no-op, mirror-of-system flips
/// signs of A's entries).
class GridFilter {
public:
    enum class Kind { identity, mirror_of_system, matrix };

    static GridFilter identity() { return GridFilter(Kind::identity, {}); }
    static GridFilter mirror_of_system() { return GridFilter(Kind::mirror_of_system, {}); }
    static GridFilter explicit_matrix(SparseMatrix m) {
        return GridFilter(Kind::matrix, std::move(m));
    }

    Kind kind() const { return kind_; }
    const SparseMatrix& matrix() const { return matrix_; }

    /// Materializes the filter against the bound system matrix.
    SparseMatrix resolve(const SparseMatrix& system, const RedBlackPartition& p) const;

private:
    GridFilter(Kind kind, SparseMatrix m) : kind_(kind), matrix_(std::move(m)) {}

    Kind kind_;
    SparseMatrix matrix_;
};

/// Four inter-grid filters plus the partition; fully determines restriction,
/// interpolation, Galerkin coarse matrices and CGC matrices.
struct TwoGridConfig {
    RedBlackPartition partition;
    GridFilter red_restriction = GridFilter::identity();
    GridFilter red_interpolation = GridFilter::identity();
    GridFilter black_restriction = GridFilter::identity();
    GridFilter black_interpolation = GridFilter::identity();

    /// Nested iteration on the red grid with plain sampling, correction on
    /// the black grid interpolated through the mirror of A.
    static TwoGridConfig multiplicative_standard(RedBlackPartition p);

    /// Both channels restrict by plain sampling and interpolate through the
    /// mirror of A.
    static TwoGridConfig additive_standard(RedBlackPartition p);
};

/// Restriction (filter then down-sample), interpolation (up-sample then
/// filter) and the Galerkin coarse matrix for one color.
class CoarseOperators {
public:
    Color color() const { return color_; }
    const SparseMatrix& coarse_matrix() const { return coarse_; }
    const RedBlackPartition& partition() const { return partition_; }

    /// I_R x: identity filters cost nothing beyond the index gather.
    Vector apply_restriction(const Vector& fine, MulCounter* counter = nullptr) const;
    /// I_I y.
    Vector apply_interpolation(const Vector& coarse, MulCounter* counter = nullptr) const;

    /// I_R as an explicit (n/2)-by-n matrix and I_I as n-by-(n/2).
    SparseMatrix restriction_matrix() const;
    SparseMatrix interpolation_matrix() const;

private:
    friend CoarseOperators build_coarse(const SparseMatrix&, const TwoGridConfig&, Color,
                                        MulCounter*);

    RedBlackPartition partition_{2, {0}};
    Color color_ = Color::red;
    // nullopt = plain sampling (identity filter)
    std::optional<SparseMatrix> restriction_;   // (n/2)-by-n rows of F_R
    std::optional<SparseMatrix> interpolation_; // n-by-(n/2) columns of F_I
    SparseMatrix coarse_;
};

/// Galerkin triple product I_R A I_I for the chosen color, exploiting
/// symbolic identity filters (plain color submatrix when both are identity).
CoarseOperators build_coarse(const SparseMatrix& a, const TwoGridConfig& config, Color color,
                             MulCounter* counter = nullptr);

/// Dense coarse grid correction matrix K = I - I_I Ac^-1 I_R A
/// (verification scale only). Throws SingularCoarseMatrix.
DenseMatrix cgc_matrix(const SparseMatrix& a, const CoarseOperators& ops);

/// The four diagonal blocks of V^H K W in (low, high) pair order.
struct CgcSymbols {
    Vector low_to_low;
    Vector high_to_low;
    Vector low_to_high;
    Vector high_to_high;
};

/// Coarse eigenvalue sequences Delta = PiRL LamL PiIL + PiRH LamH PiIH for
/// both colors.
struct DeltaSymbols {
    Vector red;
    Vector black;
};

DeltaSymbols compute_delta_symbols(const SparseMatrix& a, const TwoGridConfig& config,
                                   const BiorthogonalBasis& basis);

/// Analytic CGC blocks from filter symbols:
///   G_LL = 1 - PiIL D^-1 PiRL LamL,   G_HL = -s PiIL D^-1 PiRH LamH,
///   G_LH = -s PiIH D^-1 PiRL LamL,    G_HH = 1 - PiIH D^-1 PiRH LamH,
/// with s = +1 for the red grid and -1 for the black grid. Throws
/// SingularCoarseMatrix when a Delta entry falls below 1e-13.
CgcSymbols cgc_symbols(const SparseMatrix& a, const TwoGridConfig& config, Color color,
                       const BiorthogonalBasis& basis);

struct GalerkinInverseReport {
    double relative_error = 0;
    bool passes = false;
};

/// Compares 4 (D W_L) Delta^-1 (D V_L)^H against the dense inverse of the
/// Galerkin coarse matrix (Frobenius-relative).
GalerkinInverseReport galerkin_inverse_check(const SparseMatrix& a, const TwoGridConfig& config,
                                             Color color, const BiorthogonalBasis& basis,
                                             double tol = 1e-10);

/// Coarse solver hook: defaults to dense LU of the coarse matrix. The
/// multi-grid layer plugs a recursive solve here above the dense crossover.
using CoarseSolve = std::function<Vector(const SparseMatrix&, const Vector&)>;

struct MultiplicativeRun {
    Vector solution;     // v = v0 + e0
    Vector nested_guess; // v0, from the red nested iteration
    Vector residual;     // r = f - A v0
    Vector correction;   // e0, from the black correction scheme
};

/// Nested iteration on the red coarse grid followed by a correction scheme
/// on the black coarse grid; a direct solver whenever the configuration
/// satisfies the multiplicative direct condition.
MultiplicativeRun solve_multiplicative_2g(const SparseMatrix& a, const TwoGridConfig& config,
                                          const Vector& f, const CoarseSolve& coarse_solve = {},
                                          MulCounter* counter = nullptr);

struct AdditiveRun {
    Vector solution; // v = v_red + v_black
    Vector red_component;
    Vector black_component;
};

/// Two independent nested iterations whose interpolated solutions sum to
/// the answer; the channels have no data dependence.
AdditiveRun solve_additive_2g(const SparseMatrix& a, const TwoGridConfig& config, const Vector& f,
                              const CoarseSolve& coarse_solve = {}, MulCounter* counter = nullptr);

enum class DirectSolverMode { multiplicative, additive };

struct DirectConditionReport {
    std::vector<double> residuals;
    bool passes = false;

    double worst() const;
};

/// Entrywise direct-solver conditions on symbol sequences.
/// Multiplicative: PiRL_r LamL PiIL_b = PiRH_r LamH PiIH_b.
/// Additive: the balanced product condition
///   PiRL_r PiRL_b LamL^2 PiIL_r PiIL_b = PiRH_r PiRH_b LamH^2 PiIH_r PiIH_b
/// plus the two aliasing-cancellation conditions written with the Delta
/// factors expanded (division-free).
DirectConditionReport check_direct_conditions(const SymbolQuad& symbols,
                                              const FilterSymbols& lambda, DirectSolverMode mode,
                                              double tol = 1e-10);

} // namespace rbmg
