#include "rbmg/filterbank.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rbmg/errors.hpp"

namespace rbmg {

BankRun run_bank(const FilterQuad& quad, const Vector& s) {
    const RedBlackPartition& p = quad.partition;
    if (s.size() != p.size()) throw DimensionMismatch("run_bank: signal length mismatch");
    BankRun out;
    out.red_channel = downsample(p, Color::red, spmv(quad.red_restriction, s));
    out.black_channel = downsample(p, Color::black, spmv(quad.black_restriction, s));
    const Vector red_part = spmv(quad.red_interpolation, upsample(p, Color::red, out.red_channel));
    const Vector black_part =
        spmv(quad.black_interpolation, upsample(p, Color::black, out.black_channel));
    out.reconstructed = add(red_part, black_part);
    return out;
}

double VetterliReport::worst() const {
    return std::max({completion_residual, alias_low_high, alias_high_low});
}

VetterliReport check_vetterli(const SymbolQuad& sym, double tol) {
    const std::size_t h = sym.red_restriction_low.size();
    VetterliReport rep;
    for (std::size_t j = 0; j < h; ++j) {
        const Complex comp_low = sym.red_interpolation_low[j] * sym.red_restriction_low[j]
                                 + sym.black_interpolation_low[j] * sym.black_restriction_low[j];
        const Complex comp_high = sym.red_interpolation_high[j] * sym.red_restriction_high[j]
                                  + sym.black_interpolation_high[j] * sym.black_restriction_high[j];
        rep.completion_residual = std::max(
            {rep.completion_residual, std::abs(comp_low - 2.0), std::abs(comp_high - 2.0)});
        rep.alias_low_high = std::max(
            rep.alias_low_high,
            std::abs(sym.red_interpolation_low[j] * sym.red_restriction_high[j]
                     - sym.black_interpolation_low[j] * sym.black_restriction_high[j]));
        rep.alias_high_low = std::max(
            rep.alias_high_low,
            std::abs(sym.red_interpolation_high[j] * sym.red_restriction_low[j]
                     - sym.black_interpolation_high[j] * sym.black_restriction_low[j]));
    }
    rep.passes = rep.worst() <= tol;
    return rep;
}

SymbolQuad extract_symbol_quad(const FilterQuad& quad, const BiorthogonalBasis& basis,
                               double leak_factor) {
    SymbolQuad out;
    const FilterSymbols rr = extract_symbols(quad.red_restriction, basis, leak_factor);
    const FilterSymbols ri = extract_symbols(quad.red_interpolation, basis, leak_factor);
    const FilterSymbols br = extract_symbols(quad.black_restriction, basis, leak_factor);
    const FilterSymbols bi = extract_symbols(quad.black_interpolation, basis, leak_factor);
    out.red_restriction_low = rr.low;
    out.red_restriction_high = rr.high;
    out.red_interpolation_low = ri.low;
    out.red_interpolation_high = ri.high;
    out.black_restriction_low = br.low;
    out.black_restriction_high = br.high;
    out.black_interpolation_low = bi.low;
    out.black_interpolation_high = bi.high;
    return out;
}

FilterQuad make_qmf_bank(const BiorthogonalBasis& basis, const RedBlackPartition& partition,
                         const std::vector<double>& theta) {
    const std::size_t n = partition.size();
    if (theta.size() != n / 2)
        throw std::invalid_argument("make_qmf_bank: need n/2 angles");
    const AliasCheckReport alias = check_rbhap(basis, partition);
    if (!alias.passes)
        throw NoAliasingPattern("make_qmf_bank: basis has no red-black harmonic aliasing pattern");

    const double root2 = std::sqrt(2.0);
    Vector symbols(n, Complex(0.0, 0.0));
    for (std::size_t j = 0; j < theta.size(); ++j) {
        symbols[basis.low[j]] = root2 * std::cos(theta[j]);
        symbols[basis.high[j]] = root2 * std::sin(theta[j]);
    }
    // W diag(symbols) V^H, assembled densely (verification scale only).
    DenseMatrix scaled = basis.w;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scaled(i, j) *= symbols[j];
    const DenseMatrix prototype = multiply(scaled, adjoint(basis.v));
    const SparseMatrix interp_red = SparseMatrix::from_dense(prototype);
    const SparseMatrix interp_black = mirror(partition, interp_red);
    return FilterQuad{partition, interp_red, interp_red, interp_black, interp_black};
}

} // namespace rbmg
