#pragma once

#include <cstddef>
#include <vector>

#include "rbmg/basis.hpp"
#include "rbmg/partition.hpp"
#include "rbmg/sparse.hpp"

namespace rbmg {

/// Finite two-channel multirate system: restriction filters feed the red
/// and black down-samplers, interpolation filters follow the up-samplers.
struct FilterQuad {
    RedBlackPartition partition;
    SparseMatrix red_restriction;
    SparseMatrix red_interpolation;
    SparseMatrix black_restriction;
    SparseMatrix black_interpolation;
};

struct BankRun {
    Vector reconstructed;  // t
    Vector red_channel;    // s_red, length n/2
    Vector black_channel;  // s_black, length n/2
};

/// Runs the analysis/synthesis chain:
///   s_c = downsample(c, F_Rc s),  t = sum_c F_Ic upsample(c, s_c).
BankRun run_bank(const FilterQuad& quad, const Vector& s);

/// The eight diagonal symbol sequences of a filter quad, each length n/2,
/// in low/high pair order.
struct SymbolQuad {
    Vector red_restriction_low, red_restriction_high;
    Vector red_interpolation_low, red_interpolation_high;
    Vector black_restriction_low, black_restriction_high;
    Vector black_interpolation_low, black_interpolation_high;
};

struct VetterliReport {
    double completion_residual = 0; // max |PiI_r PiR_r + PiI_b PiR_b - 2|
    double alias_low_high = 0;      // max |PiIL_r PiRH_r - PiIL_b PiRH_b|
    double alias_high_low = 0;      // max |PiIH_r PiRL_r - PiIH_b PiRL_b|
    bool passes = false;

    double worst() const;
};

/// Perfect-reconstruction conditions on the symbols. The completion
/// condition carries the factor 2 demanded by the 1/2 in the aliasing
/// patterns (the all-identity bank reconstructs and its symbol products sum
/// to 2); the two aliasing-cancellation conditions are homogeneous.
VetterliReport check_vetterli(const SymbolQuad& symbols, double tol = 1e-10);

/// Symbol extraction for all four filters; throws NotAFilter if any matrix
/// is not a filter in the basis.
SymbolQuad extract_symbol_quad(const FilterQuad& quad, const BiorthogonalBasis& basis,
                               double leak_factor = 1e-8);

/// Quadrature-mirror bank from one interpolation prototype:
///   F_I,red = W diag(sqrt2 cos theta on L, sqrt2 sin theta on H) V^H,
///   F_R,red = F_I,red, and the black pair is its mirror. The sqrt2 scaling
/// satisfies the completion condition; the mirror pairing cancels aliasing.
/// Throws NoAliasingPattern when the basis fails check_rbhap.
FilterQuad make_qmf_bank(const BiorthogonalBasis& basis, const RedBlackPartition& partition,
                         const std::vector<double>& theta);

} // namespace rbmg
