#include "rbmg/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rbmg/errors.hpp"

namespace rbmg {

namespace {

// exp(2*pi*i * k / n) with the phase index reduced mod n first, so large
// frequencies lose no accuracy.
Complex unit_root(std::size_t k, std::size_t n) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k % n)
                         / static_cast<double>(n);
    return Complex(std::cos(angle), std::sin(angle));
}

} // namespace

BiorthogonalBasis dft_basis_1d(std::size_t n) {
    if (n == 0 || n % 2 != 0) throw std::invalid_argument("dft_basis_1d: n must be even");
    BiorthogonalBasis b;
    b.w = DenseMatrix(n, n);
    b.v = DenseMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Complex e = unit_root(i * j, n);
            b.w(i, j) = e;
            b.v(i, j) = e / static_cast<double>(n);
        }
    for (std::size_t j = 0; j < n / 2; ++j) {
        b.low.push_back(j);
        b.high.push_back(j + n / 2);
    }
    return b;
}

BiorthogonalBasis dft_basis_2d(std::size_t side) {
    if (side == 0 || side % 2 != 0) throw std::invalid_argument("dft_basis_2d: side must be even");
    const std::size_t n = side * side;
    BiorthogonalBasis b;
    b.w = DenseMatrix(n, n);
    b.v = DenseMatrix(n, n);
    for (std::size_t i = 0; i < side; ++i)
        for (std::size_t j = 0; j < side; ++j)
            for (std::size_t p = 0; p < side; ++p)
                for (std::size_t q = 0; q < side; ++q) {
                    const Complex e = unit_root(p * i + q * j, side);
                    const std::size_t node = i * side + j;
                    const std::size_t freq = p * side + q;
                    b.w(node, freq) = e;
                    b.v(node, freq) = e / static_cast<double>(n);
                }
    // Alias pairs (p,q) <-> (p+side/2, q+side/2) mod side; the low member is
    // the one closer to frequency zero in the wrap-aware metric.
    auto wrap_dist = [side](std::size_t p, std::size_t q) {
        return std::min(p, side - p) + std::min(q, side - q);
    };
    std::vector<char> seen(n, 0);
    for (std::size_t p = 0; p < side; ++p)
        for (std::size_t q = 0; q < side; ++q) {
            const std::size_t a = p * side + q;
            if (seen[a]) continue;
            const std::size_t p2 = (p + side / 2) % side;
            const std::size_t q2 = (q + side / 2) % side;
            const std::size_t c = p2 * side + q2;
            seen[a] = seen[c] = 1;
            const auto da = wrap_dist(p, q);
            const auto dc = wrap_dist(p2, q2);
            const bool a_low = da != dc ? da < dc : a < c;
            b.low.push_back(a_low ? a : c);
            b.high.push_back(a_low ? c : a);
        }
    return b;
}

BiorthogonalBasis sine_basis_1d(std::size_t n) {
    if (n == 0 || n % 2 != 0) throw std::invalid_argument("sine_basis_1d: n must be even");
    BiorthogonalBasis b;
    b.w = DenseMatrix(n, n);
    b.v = DenseMatrix(n, n);
    const double scale = 2.0 / static_cast<double>(n + 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double s =
                std::sin(static_cast<double>((i + 1) * (j + 1)) * std::numbers::pi
                         / static_cast<double>(n + 1));
            b.w(i, j) = scale * s;
            b.v(i, j) = s; // (n+1)/2 * scale = 1
        }
    for (std::size_t j = 0; j < n / 2; ++j) {
        b.low.push_back(j);
        b.high.push_back(n - 1 - j);
    }
    return b;
}

namespace {

void require_sizes(const BiorthogonalBasis& basis, const RedBlackPartition& p) {
    const std::size_t n = p.size();
    if (basis.w.rows() != n || basis.w.cols() != n || basis.v.rows() != n || basis.v.cols() != n)
        throw DimensionMismatch("basis/partition size mismatch");
    if (basis.low.size() != n / 2 || basis.high.size() != n / 2)
        throw DimensionMismatch("basis split must pair all columns");
}

double biorthogonality_error(const BiorthogonalBasis& basis) {
    const DenseMatrix g = multiply(adjoint(basis.v), basis.w);
    double dev = 0;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) {
            const Complex expect = i == j ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
            dev = std::max(dev, std::abs(g(i, j) - expect));
        }
    return dev;
}

// V^H (U D)_c W reordered to (low, high) columns and rows.
DenseMatrix masked_pattern(const BiorthogonalBasis& basis, const RedBlackPartition& p, Color c) {
    const std::size_t n = basis.size();
    DenseMatrix masked(n, n);
    for (std::size_t node : p.nodes(c))
        for (std::size_t j = 0; j < n; ++j) masked(node, j) = basis.w(node, j);
    const DenseMatrix m = multiply(adjoint(basis.v), masked);
    std::vector<std::size_t> order;
    order.reserve(n);
    order.insert(order.end(), basis.low.begin(), basis.low.end());
    order.insert(order.end(), basis.high.begin(), basis.high.end());
    DenseMatrix out(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) out(a, b) = m(order[a], order[b]);
    return out;
}

// max |pattern - 1/2 [I, s I; s I, I]| with s = +1 (red) or -1 (black).
double pattern_deviation(const DenseMatrix& pattern, double cross_sign) {
    const std::size_t n = pattern.rows();
    const std::size_t h = n / 2;
    double dev = 0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            double expect = 0;
            if (a == b)
                expect = 0.5;
            else if (a + h == b || b + h == a)
                expect = 0.5 * cross_sign;
            dev = std::max(dev, std::abs(pattern(a, b) - expect));
        }
    return dev;
}

} // namespace

AliasCheckReport check_rbhap(const BiorthogonalBasis& basis, const RedBlackPartition& p,
                             double tol) {
    require_sizes(basis, p);
    AliasCheckReport report;
    report.biorthogonality_error = biorthogonality_error(basis);
    if (report.biorthogonality_error > tol)
        throw NotBiorthogonal("check_rbhap: V^H W deviates from identity by "
                              + std::to_string(report.biorthogonality_error));
    report.pattern_red = masked_pattern(basis, p, Color::red);
    report.pattern_black = masked_pattern(basis, p, Color::black);
    report.max_deviation_red = pattern_deviation(report.pattern_red, +1.0);
    report.max_deviation_black = pattern_deviation(report.pattern_black, -1.0);
    // The equivalence proposition: the two patterns complete to the identity.
    const DenseMatrix sum = add(report.pattern_red, report.pattern_black);
    report.completion_deviation = max_abs_diff(sum, DenseMatrix::identity(sum.rows()));
    report.passes = report.max_deviation_red <= tol && report.max_deviation_black <= tol
                    && report.completion_deviation <= 2 * tol;
    return report;
}

SurjectiveFormReport check_surjective_form(const BiorthogonalBasis& basis,
                                           const RedBlackPartition& p, double tol) {
    require_sizes(basis, p);
    if (biorthogonality_error(basis) > tol)
        throw NotBiorthogonal("check_surjective_form: basis is not biorthogonal");
    double dev = 0;
    for (std::size_t j = 0; j < basis.low.size(); ++j) {
        const std::size_t lo = basis.low[j];
        const std::size_t hi = basis.high[j];
        for (std::size_t node : p.red()) {
            dev = std::max(dev, std::abs(basis.w(node, lo) - basis.w(node, hi)));
            dev = std::max(dev, std::abs(basis.v(node, lo) - basis.v(node, hi)));
        }
        for (std::size_t node : p.black()) {
            dev = std::max(dev, std::abs(basis.w(node, lo) + basis.w(node, hi)));
            dev = std::max(dev, std::abs(basis.v(node, lo) + basis.v(node, hi)));
        }
    }
    return {dev, dev <= tol};
}

std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> discover_alias_split(
    const DenseMatrix& w, const DenseMatrix& v, const RedBlackPartition& p, double tol) {
    const std::size_t n = p.size();
    if (w.rows() != n || w.cols() != n || v.rows() != n || v.cols() != n)
        throw DimensionMismatch("discover_alias_split: basis/partition size mismatch");
    const double scale = std::max({max_abs(w), max_abs(v), 1.0});
    const double bound = tol * scale;

    auto is_partner = [&](std::size_t j, std::size_t k) {
        for (std::size_t node : p.red()) {
            if (std::abs(w(node, j) - w(node, k)) > bound) return false;
            if (std::abs(v(node, j) - v(node, k)) > bound) return false;
        }
        for (std::size_t node : p.black()) {
            if (std::abs(w(node, j) + w(node, k)) > bound) return false;
            if (std::abs(v(node, j) + v(node, k)) > bound) return false;
        }
        return true;
    };

    std::vector<char> paired(n, 0);
    std::vector<std::size_t> low, high;
    for (std::size_t j = 0; j < n; ++j) {
        if (paired[j]) continue;
        std::size_t partner = n;
        for (std::size_t k = j + 1; k < n; ++k) {
            if (paired[k] || !is_partner(j, k)) continue;
            if (partner != n) return std::nullopt; // ambiguous pairing
            partner = k;
        }
        if (partner == n) return std::nullopt; // unpaired column
        paired[j] = paired[partner] = 1;
        low.push_back(j);
        high.push_back(partner);
    }
    return std::make_pair(std::move(low), std::move(high));
}

std::vector<MultigridBasisLevel> check_multigrid_harmonic_basis(const BiorthogonalBasis& basis,
                                                                const PartitionHierarchy& hierarchy,
                                                                std::size_t levels, double tol) {
    std::vector<MultigridBasisLevel> reports;
    BiorthogonalBasis current = basis;
    for (std::size_t level = 0; level < levels; ++level) {
        MultigridBasisLevel entry;
        entry.level = level;
        entry.size = current.size();
        const auto part = hierarchy.partition(current.size(), level);
        if (!part) throw HierarchyExhausted(level, "", current.size());
        if (level > 0) {
            // Pairings below the fine level are not prescribed; find them.
            const auto split = discover_alias_split(current.w, current.v, *part);
            entry.split_found = split.has_value();
            if (!split) {
                reports.push_back(entry);
                break;
            }
            current.low = split->first;
            current.high = split->second;
        } else {
            entry.split_found = true;
        }
        const AliasCheckReport alias = check_rbhap(current, *part, tol);
        entry.biorthogonality_error = alias.biorthogonality_error;
        entry.max_deviation_red = alias.max_deviation_red;
        entry.max_deviation_black = alias.max_deviation_black;
        entry.passes = alias.passes;
        reports.push_back(entry);
        if (!alias.passes) break;

        // Next level: red-down-sampled low columns; rescale the dual by 2 so
        // V^H W = I survives ((D V_L)^H (D W_L) = I/2).
        const std::size_t half = current.size() / 2;
        BiorthogonalBasis next;
        next.w = DenseMatrix(half, half);
        next.v = DenseMatrix(half, half);
        const auto red = part->red();
        for (std::size_t i = 0; i < half; ++i)
            for (std::size_t j = 0; j < half; ++j) {
                next.w(i, j) = current.w(red[i], current.low[j]);
                next.v(i, j) = 2.0 * current.v(red[i], current.low[j]);
            }
        current = std::move(next);
    }
    return reports;
}

DenseMatrix basis_transform(const SparseMatrix& m, const BiorthogonalBasis& basis) {
    const std::size_t n = basis.size();
    if (m.rows() != n || m.cols() != n)
        throw DimensionMismatch("basis_transform: matrix/basis size mismatch");
    // M W through the sparse rows, then V^H (M W) densely.
    DenseMatrix mw(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto cols = m.row_cols(i);
        const auto vals = m.row_values(i);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            const Complex a = vals[k];
            const std::size_t r = cols[k];
            for (std::size_t j = 0; j < n; ++j) mw(i, j) += a * basis.w(r, j);
        }
    }
    return multiply(adjoint(basis.v), mw);
}

FilterSymbols extract_symbols(const SparseMatrix& filter, const BiorthogonalBasis& basis,
                              double leak_factor) {
    const DenseMatrix s = basis_transform(filter, basis);
    double leak = 0;
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = 0; j < s.cols(); ++j)
            if (i != j) leak = std::max(leak, std::abs(s(i, j)));
    const double threshold = leak_factor * std::max(frobenius_norm(filter), 1e-300);
    if (leak > threshold)
        throw NotAFilter("extract_symbols: off-diagonal leakage " + std::to_string(leak)
                         + " exceeds " + std::to_string(threshold));
    FilterSymbols out;
    out.low.reserve(basis.low.size());
    out.high.reserve(basis.high.size());
    for (std::size_t j : basis.low) out.low.push_back(s(j, j));
    for (std::size_t j : basis.high) out.high.push_back(s(j, j));
    return out;
}

} // namespace rbmg
