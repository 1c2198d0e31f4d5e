#include "rbmg/twogrid.hpp"

#include <algorithm>
#include <cmath>

#include "rbmg/errors.hpp"

namespace rbmg {

SparseMatrix GridFilter::resolve(const SparseMatrix& system, const RedBlackPartition& p) const {
    switch (kind_) {
    case Kind::identity:
        return SparseMatrix::identity(p.size());
    case Kind::mirror_of_system:
        return mirror(p, system);
    case Kind::matrix:
        if (matrix_.rows() != p.size() || matrix_.cols() != p.size())
            throw DimensionMismatch("grid filter: explicit matrix size mismatch");
        return matrix_;
    }
    throw Error("grid filter: unreachable");
}

TwoGridConfig TwoGridConfig::multiplicative_standard(RedBlackPartition p) {
    TwoGridConfig c{std::move(p)};
    c.black_interpolation = GridFilter::mirror_of_system();
    return c;
}

TwoGridConfig TwoGridConfig::additive_standard(RedBlackPartition p) {
    TwoGridConfig c{std::move(p)};
    c.red_interpolation = GridFilter::mirror_of_system();
    c.black_interpolation = GridFilter::mirror_of_system();
    return c;
}

namespace {

const GridFilter& restriction_slot(const TwoGridConfig& c, Color color) {
    return color == Color::red ? c.red_restriction : c.black_restriction;
}

const GridFilter& interpolation_slot(const TwoGridConfig& c, Color color) {
    return color == Color::red ? c.red_interpolation : c.black_interpolation;
}

} // namespace

Vector CoarseOperators::apply_restriction(const Vector& fine, MulCounter* counter) const {
    if (!restriction_) return downsample(partition_, color_, fine);
    return spmv(*restriction_, fine, counter);
}

Vector CoarseOperators::apply_interpolation(const Vector& coarse, MulCounter* counter) const {
    if (!interpolation_) return upsample(partition_, color_, coarse);
    return spmv(*interpolation_, coarse, counter);
}

SparseMatrix CoarseOperators::restriction_matrix() const {
    return restriction_ ? *restriction_ : downsampling_matrix(partition_, color_);
}

SparseMatrix CoarseOperators::interpolation_matrix() const {
    return interpolation_ ? *interpolation_ : upsampling_matrix(partition_, color_);
}

CoarseOperators build_coarse(const SparseMatrix& a, const TwoGridConfig& config, Color color,
                             MulCounter* counter) {
    const RedBlackPartition& p = config.partition;
    if (a.rows() != a.cols() || a.rows() != p.size())
        throw DimensionMismatch("build_coarse: system/partition size mismatch");
    CoarseOperators ops;
    ops.partition_ = p;
    ops.color_ = color;
    const auto nodes = p.nodes(color);

    const GridFilter& fr = restriction_slot(config, color);
    const GridFilter& fi = interpolation_slot(config, color);
    if (fr.kind() != GridFilter::Kind::identity)
        ops.restriction_ = select_rows(fr.resolve(a, p), nodes);
    if (fi.kind() != GridFilter::Kind::identity)
        ops.interpolation_ = select_cols(fi.resolve(a, p), nodes);

    if (!ops.restriction_ && !ops.interpolation_) {
        ops.coarse_ = color_submatrix(p, color, color, a); // D A U, no arithmetic
    } else if (!ops.restriction_) {
        ops.coarse_ = spmm(select_rows(a, nodes), *ops.interpolation_, 0.0, counter);
    } else if (!ops.interpolation_) {
        ops.coarse_ = select_cols(spmm(*ops.restriction_, a, 0.0, counter), nodes);
    } else {
        ops.coarse_ = spmm(spmm(*ops.restriction_, a, 0.0, counter), *ops.interpolation_, 0.0,
                           counter);
    }
    return ops;
}

DenseMatrix cgc_matrix(const SparseMatrix& a, const CoarseOperators& ops) {
    const std::size_t n = a.rows();
    const SparseMatrix ra = spmm(ops.restriction_matrix(), a); // I_R A
    DenseMatrix solved;
    try {
        solved = LuFactorization(to_dense(ops.coarse_matrix())).solve_matrix(to_dense(ra));
    } catch (const SingularMatrix& err) {
        throw SingularCoarseMatrix(0, std::string(1, color_char(ops.color())), err.what());
    }
    const DenseMatrix lift = multiply(to_dense(ops.interpolation_matrix()), solved);
    return subtract(DenseMatrix::identity(n), lift);
}

namespace {

struct ColorSymbols {
    Vector restriction_low, restriction_high;
    Vector interpolation_low, interpolation_high;
};

Vector ones(std::size_t n) { return Vector(n, Complex(1.0, 0.0)); }

Vector filter_symbols_block(const GridFilter& f, const SparseMatrix& a,
                            const BiorthogonalBasis& basis, const FilterSymbols& lambda,
                            bool low_block, const RedBlackPartition& p) {
    switch (f.kind()) {
    case GridFilter::Kind::identity:
        return ones(basis.low.size());
    case GridFilter::Kind::mirror_of_system:
        // Frequency inversion: the mirror of A swaps the low and high blocks.
        return low_block ? lambda.high : lambda.low;
    case GridFilter::Kind::matrix: {
        const FilterSymbols s = extract_symbols(f.resolve(a, p), basis);
        return low_block ? s.low : s.high;
    }
    }
    throw Error("grid filter: unreachable");
}

ColorSymbols resolve_color_symbols(const SparseMatrix& a, const TwoGridConfig& config, Color color,
                                   const BiorthogonalBasis& basis, const FilterSymbols& lambda) {
    ColorSymbols s;
    const GridFilter& fr = restriction_slot(config, color);
    const GridFilter& fi = interpolation_slot(config, color);
    s.restriction_low = filter_symbols_block(fr, a, basis, lambda, true, config.partition);
    s.restriction_high = filter_symbols_block(fr, a, basis, lambda, false, config.partition);
    s.interpolation_low = filter_symbols_block(fi, a, basis, lambda, true, config.partition);
    s.interpolation_high = filter_symbols_block(fi, a, basis, lambda, false, config.partition);
    return s;
}

Vector delta_of(const ColorSymbols& s, const FilterSymbols& lambda) {
    const std::size_t h = lambda.low.size();
    Vector d(h);
    for (std::size_t j = 0; j < h; ++j)
        d[j] = s.restriction_low[j] * lambda.low[j] * s.interpolation_low[j]
               + s.restriction_high[j] * lambda.high[j] * s.interpolation_high[j];
    return d;
}

} // namespace

DeltaSymbols compute_delta_symbols(const SparseMatrix& a, const TwoGridConfig& config,
                                   const BiorthogonalBasis& basis) {
    const FilterSymbols lambda = extract_symbols(a, basis);
    DeltaSymbols out;
    out.red = delta_of(resolve_color_symbols(a, config, Color::red, basis, lambda), lambda);
    out.black = delta_of(resolve_color_symbols(a, config, Color::black, basis, lambda), lambda);
    return out;
}

CgcSymbols cgc_symbols(const SparseMatrix& a, const TwoGridConfig& config, Color color,
                       const BiorthogonalBasis& basis) {
    const FilterSymbols lambda = extract_symbols(a, basis);
    const ColorSymbols s = resolve_color_symbols(a, config, color, basis, lambda);
    const Vector delta = delta_of(s, lambda);
    const std::size_t h = delta.size();
    for (std::size_t j = 0; j < h; ++j)
        if (std::abs(delta[j]) < 1e-13)
            throw SingularCoarseMatrix(0, std::string(1, color_char(color)),
                                       "coarse eigenvalue below 1e-13 in symbol space");
    // Cross-block signs differ between the red and black grids.
    const double sign = color == Color::red ? -1.0 : 1.0;
    CgcSymbols out;
    out.low_to_low.resize(h);
    out.high_to_low.resize(h);
    out.low_to_high.resize(h);
    out.high_to_high.resize(h);
    for (std::size_t j = 0; j < h; ++j) {
        const Complex inv = 1.0 / delta[j];
        out.low_to_low[j] =
            1.0 - s.interpolation_low[j] * inv * s.restriction_low[j] * lambda.low[j];
        out.high_to_low[j] =
            sign * s.interpolation_low[j] * inv * s.restriction_high[j] * lambda.high[j];
        out.low_to_high[j] =
            sign * s.interpolation_high[j] * inv * s.restriction_low[j] * lambda.low[j];
        out.high_to_high[j] =
            1.0 - s.interpolation_high[j] * inv * s.restriction_high[j] * lambda.high[j];
    }
    return out;
}

GalerkinInverseReport galerkin_inverse_check(const SparseMatrix& a, const TwoGridConfig& config,
                                             Color color, const BiorthogonalBasis& basis,
                                             double tol) {
    const FilterSymbols lambda = extract_symbols(a, basis);
    const ColorSymbols s = resolve_color_symbols(a, config, color, basis, lambda);
    const Vector delta = delta_of(s, lambda);
    const std::size_t h = delta.size();
    for (std::size_t j = 0; j < h; ++j)
        if (std::abs(delta[j]) < 1e-13)
            throw SingularCoarseMatrix(0, std::string(1, color_char(color)),
                                       "coarse eigenvalue below 1e-13 in symbol space");

    // 4 (D W_L) Delta^-1 (D V_L)^H
    const auto nodes = config.partition.nodes(color);
    DenseMatrix dw(h, h), dv(h, h);
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < h; ++j) {
            dw(i, j) = basis.w(nodes[i], basis.low[j]) * (4.0 / delta[j]);
            dv(i, j) = basis.v(nodes[i], basis.low[j]);
        }
    const DenseMatrix formula = multiply(dw, adjoint(dv));

    const CoarseOperators ops = build_coarse(a, config, color);
    DenseMatrix inverse;
    try {
        inverse = LuFactorization(to_dense(ops.coarse_matrix())).inverse();
    } catch (const SingularMatrix& err) {
        throw SingularCoarseMatrix(0, std::string(1, color_char(color)), err.what());
    }
    GalerkinInverseReport rep;
    rep.relative_error = frobenius_norm(subtract(formula, inverse)) / frobenius_norm(inverse);
    rep.passes = rep.relative_error <= tol;
    return rep;
}

namespace {

Vector coarse_solve_or_lu(const CoarseSolve& coarse_solve, const SparseMatrix& coarse,
                          const Vector& rhs, Color color, MulCounter* counter) {
    if (coarse_solve) return coarse_solve(coarse, rhs);
    try {
        LuFactorization lu(to_dense(coarse), counter);
        return lu.solve(rhs, counter);
    } catch (const SingularMatrix& err) {
        throw SingularCoarseMatrix(0, std::string(1, color_char(color)), err.what());
    }
}

} // namespace

MultiplicativeRun solve_multiplicative_2g(const SparseMatrix& a, const TwoGridConfig& config,
                                          const Vector& f, const CoarseSolve& coarse_solve,
                                          MulCounter* counter) {
    if (f.size() != a.rows()) throw DimensionMismatch("solve_multiplicative_2g: rhs mismatch");
    const CoarseOperators red = build_coarse(a, config, Color::red, counter);
    const CoarseOperators black = build_coarse(a, config, Color::black, counter);

    MultiplicativeRun run;
    // Nested iteration: initial approximation from the red coarse system.
    const Vector coarse_guess = coarse_solve_or_lu(coarse_solve, red.coarse_matrix(),
                                                   red.apply_restriction(f, counter), Color::red,
                                                   counter);
    run.nested_guess = red.apply_interpolation(coarse_guess, counter);
    // Correction scheme on the residual through the black coarse system.
    run.residual = subtract(f, spmv(a, run.nested_guess, counter));
    const Vector coarse_corr = coarse_solve_or_lu(coarse_solve, black.coarse_matrix(),
                                                  black.apply_restriction(run.residual, counter),
                                                  Color::black, counter);
    run.correction = black.apply_interpolation(coarse_corr, counter);
    run.solution = add(run.nested_guess, run.correction);
    return run;
}

AdditiveRun solve_additive_2g(const SparseMatrix& a, const TwoGridConfig& config, const Vector& f,
                              const CoarseSolve& coarse_solve, MulCounter* counter) {
    if (f.size() != a.rows()) throw DimensionMismatch("solve_additive_2g: rhs mismatch");
    const CoarseOperators red = build_coarse(a, config, Color::red, counter);
    const CoarseOperators black = build_coarse(a, config, Color::black, counter);

    // The two channel solves are independent; inputs immutable, outputs
    // disjoint, so they may run concurrently.
    AdditiveRun run;
    run.red_component = red.apply_interpolation(
        coarse_solve_or_lu(coarse_solve, red.coarse_matrix(), red.apply_restriction(f, counter),
                           Color::red, counter),
        counter);
    run.black_component = black.apply_interpolation(
        coarse_solve_or_lu(coarse_solve, black.coarse_matrix(),
                           black.apply_restriction(f, counter), Color::black, counter),
        counter);
    run.solution = add(run.red_component, run.black_component);
    return run;
}

double DirectConditionReport::worst() const {
    double w = 0;
    for (double r : residuals) w = std::max(w, r);
    return w;
}

DirectConditionReport check_direct_conditions(const SymbolQuad& sym, const FilterSymbols& lambda,
                                              DirectSolverMode mode, double tol) {
    const std::size_t h = lambda.low.size();
    DirectConditionReport rep;
    if (mode == DirectSolverMode::multiplicative) {
        double r = 0;
        for (std::size_t j = 0; j < h; ++j)
            r = std::max(r, std::abs(sym.red_restriction_low[j] * lambda.low[j]
                                         * sym.black_interpolation_low[j]
                                     - sym.red_restriction_high[j] * lambda.high[j]
                                           * sym.black_interpolation_high[j]));
        rep.residuals.push_back(r);
    } else {
        double balanced = 0, alias_lh = 0, alias_hl = 0;
        for (std::size_t j = 0; j < h; ++j) {
            const Complex arl = sym.red_restriction_low[j], arh = sym.red_restriction_high[j];
            const Complex ail = sym.red_interpolation_low[j], aih = sym.red_interpolation_high[j];
            const Complex brl = sym.black_restriction_low[j], brh = sym.black_restriction_high[j];
            const Complex bil = sym.black_interpolation_low[j],
                          bih = sym.black_interpolation_high[j];
            const Complex ll = lambda.low[j], lh = lambda.high[j];
            const Complex delta_red = arl * ll * ail + arh * lh * aih;
            const Complex delta_black = brl * ll * bil + brh * lh * bih;
            balanced = std::max(balanced,
                                std::abs(arl * brl * ll * ll * ail * bil
                                         - arh * brh * lh * lh * aih * bih));
            alias_lh = std::max(alias_lh, std::abs(ail * arh * delta_black - bil * brh * delta_red));
            alias_hl = std::max(alias_hl, std::abs(aih * arl * delta_black - bih * brl * delta_red));
        }
        rep.residuals = {balanced, alias_lh, alias_hl};
    }
    rep.passes = rep.worst() <= tol;
    return rep;
}

} // namespace rbmg
