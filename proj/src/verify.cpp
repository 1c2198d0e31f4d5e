#include "rbmg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "rbmg/basis.hpp"
#include "rbmg/filterbank.hpp"
#include "rbmg/lu.hpp"
#include "rbmg/multigrid.hpp"
#include "rbmg/problems.hpp"
#include "rbmg/twogrid.hpp"

namespace rbmg {

namespace {

constexpr std::uint64_t kSeed = 0x5eed5eed5eedULL;

Vector random_signal(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> dist;
    Vector x(n);
    for (Complex& v : x) v = Complex(dist(rng), dist(rng));
    return x;
}

void push(std::vector<CheckResult>& out, const std::string& name, double residual, double tol) {
    out.push_back({name, residual, tol, residual <= tol});
}

void push_flag(std::vector<CheckResult>& out, const std::string& name, bool ok) {
    out.push_back({name, ok ? 0.0 : 1.0, 0.5, ok});
}

// K in the (low, high)-ordered symbol frame: V^H K W reordered.
DenseMatrix ordered_symbol_frame(const DenseMatrix& k, const BiorthogonalBasis& basis) {
    const DenseMatrix m = multiply(adjoint(basis.v), multiply(k, basis.w));
    const std::size_t n = m.rows();
    std::vector<std::size_t> order;
    order.insert(order.end(), basis.low.begin(), basis.low.end());
    order.insert(order.end(), basis.high.begin(), basis.high.end());
    DenseMatrix out(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) out(a, b) = m(order[a], order[b]);
    return out;
}

double symbols_vs_matrix_deviation(const CgcSymbols& sym, const DenseMatrix& k,
                                   const BiorthogonalBasis& basis) {
    const DenseMatrix frame = ordered_symbol_frame(k, basis);
    const std::size_t h = sym.low_to_low.size();
    double dev = 0;
    for (std::size_t j = 0; j < h; ++j) {
        dev = std::max(dev, std::abs(frame(j, j) - sym.low_to_low[j]));
        dev = std::max(dev, std::abs(frame(j, j + h) - sym.high_to_low[j]));
        dev = std::max(dev, std::abs(frame(j + h, j) - sym.low_to_high[j]));
        dev = std::max(dev, std::abs(frame(j + h, j + h) - sym.high_to_high[j]));
    }
    return dev;
}

void check_one_basis(std::vector<CheckResult>& out, const std::string& label,
                     const BiorthogonalBasis& basis, const RedBlackPartition& part, double tol) {
    const AliasCheckReport alias = check_rbhap(basis, part, tol);
    push(out, label + ".rbhap_red", alias.max_deviation_red, tol);
    push(out, label + ".rbhap_black", alias.max_deviation_black, tol);
    push(out, label + ".pattern_completion", alias.completion_deviation, 2 * tol);
    const SurjectiveFormReport surj = check_surjective_form(basis, part, tol);
    push(out, label + ".surjective_form", surj.max_deviation, tol);
    push_flag(out, label + ".checks_agree", alias.passes == surj.passes);

    // Coarse-grid biorthogonal relationships on the black grid:
    // (D V_L)^H (D W_L) = I/2, (D V_L)^H (D W_H) = -I/2, ...
    const std::size_t h = part.half();
    double dev = 0;
    for (std::size_t a = 0; a < h; ++a)
        for (std::size_t b = 0; b < h; ++b) {
            Complex ll(0, 0), lh(0, 0), hl(0, 0), hh(0, 0);
            for (std::size_t node : part.black()) {
                ll += std::conj(basis.v(node, basis.low[a])) * basis.w(node, basis.low[b]);
                lh += std::conj(basis.v(node, basis.low[a])) * basis.w(node, basis.high[b]);
                hl += std::conj(basis.v(node, basis.high[a])) * basis.w(node, basis.low[b]);
                hh += std::conj(basis.v(node, basis.high[a])) * basis.w(node, basis.high[b]);
            }
            const Complex eye = a == b ? Complex(0.5, 0.0) : Complex(0.0, 0.0);
            dev = std::max({dev, std::abs(ll - eye), std::abs(lh + eye), std::abs(hl + eye),
                            std::abs(hh - eye)});
        }
    push(out, label + ".coarse_biorthogonality", dev, tol);
}

} // namespace

std::vector<CheckResult> verify_aliasing(const VerifyOptions& opts) {
    std::vector<CheckResult> out;
    const double tol = opts.tol;
    const bool all = opts.basis.empty();

    if (all || opts.basis.rfind("dft2d", 0) == 0) {
        std::size_t side = 4;
        if (!all) side = std::stoul(opts.basis.substr(5));
        check_one_basis(out, "dft2d" + std::to_string(side), dft_basis_2d(side),
                        RedBlackPartition::chessboard(side), tol);
        const auto levels = check_multigrid_harmonic_basis(
            dft_basis_2d(side), PartitionHierarchy::torus(2), 2, tol);
        bool ok = levels.size() == 2;
        for (const auto& level : levels) ok = ok && level.passes;
        push_flag(out, "dft2d" + std::to_string(side) + ".multigrid_harmonic_depth2", ok);
    }
    if (all || (opts.basis.rfind("dft", 0) == 0 && opts.basis.rfind("dft2d", 0) != 0)) {
        std::size_t n = opts.n;
        if (!all) n = std::stoul(opts.basis.substr(3));
        check_one_basis(out, "dft" + std::to_string(n), dft_basis_1d(n),
                        RedBlackPartition::even_odd(n), tol);
        const std::size_t depth = n >= 8 ? 3 : 1;
        const auto levels = check_multigrid_harmonic_basis(dft_basis_1d(n),
                                                           PartitionHierarchy::ring(1), depth, tol);
        bool ok = levels.size() == depth;
        for (const auto& level : levels) ok = ok && level.passes;
        push_flag(out, "dft" + std::to_string(n) + ".multigrid_harmonic", ok);
    }
    if (all || opts.basis.rfind("sine", 0) == 0) {
        std::size_t n = 8;
        if (!all && opts.basis.size() > 4) n = std::stoul(opts.basis.substr(4));
        check_one_basis(out, "sine" + std::to_string(n), sine_basis_1d(n),
                        RedBlackPartition::even_odd(n), tol);
    }

    // A generic biorthogonal pair has no aliasing pattern and the wrong
    // pairing breaks the surjective form; both checks must agree on that.
    std::mt19937_64 rng(kSeed);
    const std::size_t n = opts.n;
    BiorthogonalBasis random_basis = dft_basis_1d(n);
    {
        DenseMatrix w(n, n);
        std::normal_distribution<double> dist;
        for (Complex& v : w.data()) v = Complex(dist(rng), dist(rng));
        random_basis.w = w;
        random_basis.v = LuFactorization(adjoint(w)).inverse();
    }
    const AliasCheckReport alias = check_rbhap(random_basis, RedBlackPartition::even_odd(n), tol);
    const SurjectiveFormReport surj =
        check_surjective_form(random_basis, RedBlackPartition::even_odd(n), tol);
    push_flag(out, "random_basis.no_pattern", !alias.passes && !surj.passes);

    BiorthogonalBasis shuffled = dft_basis_1d(n);
    for (std::size_t j = 0; j < shuffled.high.size(); ++j)
        shuffled.high[j] = shuffled.low[(j + 1) % shuffled.low.size()] + n / 2;
    const SurjectiveFormReport wrong =
        check_surjective_form(shuffled, RedBlackPartition::even_odd(n), tol);
    push_flag(out, "shuffled_pairing.rejected", !wrong.passes);
    return out;
}

std::vector<CheckResult> verify_filterbank(const VerifyOptions& opts) {
    std::vector<CheckResult> out;
    const double tol = opts.tol;
    const std::size_t n = opts.n >= 4 ? opts.n : 8;
    const BiorthogonalBasis basis = dft_basis_1d(n);
    const RedBlackPartition part = RedBlackPartition::even_odd(n);
    std::mt19937_64 rng(kSeed);

    // All-identity bank completes to the identity.
    const FilterQuad id_quad{part, SparseMatrix::identity(n), SparseMatrix::identity(n),
                             SparseMatrix::identity(n), SparseMatrix::identity(n)};
    Vector s = random_signal(rng, n);
    push(out, "identity_bank.reconstruction",
         norm2(subtract(run_bank(id_quad, s).reconstructed, s)) / norm2(s), 1e-12);
    push_flag(out, "identity_bank.vetterli",
              check_vetterli(extract_symbol_quad(id_quad, basis), tol).passes);

    // QMF bank with a sweep of angles.
    std::vector<double> theta(n / 2);
    for (std::size_t j = 0; j < theta.size(); ++j) theta[j] = 0.3 * static_cast<double>(j);
    const FilterQuad qmf = make_qmf_bank(basis, part, theta);
    double worst = 0;
    for (int trial = 0; trial < 10; ++trial) {
        s = random_signal(rng, n);
        worst = std::max(worst, norm2(subtract(run_bank(qmf, s).reconstructed, s)) / norm2(s));
    }
    push(out, "qmf_bank.reconstruction", worst, 1e-12);
    push_flag(out, "qmf_bank.vetterli", check_vetterli(extract_symbol_quad(qmf, basis), tol).passes);

    // Mirror frequency inversion: mirroring a filter swaps its symbol blocks.
    const FilterSymbols proto = extract_symbols(qmf.red_interpolation, basis);
    const FilterSymbols mirrored = extract_symbols(mirror(part, qmf.red_interpolation), basis);
    double swap_dev = 0;
    for (std::size_t j = 0; j < proto.low.size(); ++j) {
        swap_dev = std::max(swap_dev, std::abs(mirrored.low[j] - proto.high[j]));
        swap_dev = std::max(swap_dev, std::abs(mirrored.high[j] - proto.low[j]));
    }
    push(out, "mirror.frequency_inversion", swap_dev, tol);

    // Identity red channel with a dead black channel: the completion and
    // aliasing conditions both fail and the bank does not reconstruct.
    const FilterQuad broken{part, SparseMatrix::identity(n), SparseMatrix::identity(n),
                            SparseMatrix::zero(n, n), SparseMatrix::zero(n, n)};
    const VetterliReport broken_rep = check_vetterli(extract_symbol_quad(broken, basis), tol);
    const double broken_recon =
        norm2(subtract(run_bank(broken, s).reconstructed, s)) / norm2(s);
    push_flag(out, "dead_channel.rejected",
              !broken_rep.passes && broken_rep.worst() >= 1e-4 && broken_recon > 1e-4);
    return out;
}

std::vector<CheckResult> verify_twogrid(const VerifyOptions& opts) {
    std::vector<CheckResult> out;
    const double tol = opts.tol;
    const std::size_t n = opts.n;
    const double k = std::numbers::pi / 3.0;
    const ProblemInstance problem = helmholtz_periodic_1d(n, k);
    const SparseMatrix& a = problem.matrix;
    const BiorthogonalBasis basis = problem.eigenbasis();
    const RedBlackPartition part = RedBlackPartition::even_odd(n);
    const DenseMatrix eye = DenseMatrix::identity(n);
    const DenseMatrix a_inverse = LuFactorization(to_dense(a)).inverse();

    for (const bool additive : {false, true}) {
        const TwoGridConfig config = additive ? TwoGridConfig::additive_standard(part)
                                              : TwoGridConfig::multiplicative_standard(part);
        const std::string label = additive ? "additive" : "multiplicative";
        const CoarseOperators red = build_coarse(a, config, Color::red);
        const CoarseOperators black = build_coarse(a, config, Color::black);
        const DenseMatrix k_red = cgc_matrix(a, red);
        const DenseMatrix k_black = cgc_matrix(a, black);
        const double scale = frobenius_norm(eye);

        push(out, label + ".idempotent_red",
             frobenius_norm(subtract(multiply(k_red, k_red), k_red))
                 / std::max(frobenius_norm(k_red), 1e-300),
             tol);
        push(out, label + ".idempotent_black",
             frobenius_norm(subtract(multiply(k_black, k_black), k_black))
                 / std::max(frobenius_norm(k_black), 1e-300),
             tol);
        if (additive)
            push(out, "additive.cgc_sum_identity",
                 frobenius_norm(subtract(add(k_red, k_black), eye)) / scale, tol);
        else
            push(out, "multiplicative.cgc_product_zero",
                 frobenius_norm(multiply(k_black, k_red)) / scale, tol);

        push(out, label + ".thm_cgc_symbols_red",
             symbols_vs_matrix_deviation(cgc_symbols(a, config, Color::red, basis), k_red, basis),
             1e-9);
        push(out, label + ".thm_cgc_symbols_black",
             symbols_vs_matrix_deviation(cgc_symbols(a, config, Color::black, basis), k_black,
                                         basis),
             1e-9);
        push(out, label + ".galerkin_inverse_red",
             galerkin_inverse_check(a, config, Color::red, basis, tol).relative_error, tol);
        push(out, label + ".galerkin_inverse_black",
             galerkin_inverse_check(a, config, Color::black, basis, tol).relative_error, tol);

        // Inverse factorization against the dense oracle.
        const DenseMatrix term_red =
            multiply(to_dense(red.interpolation_matrix()),
                     multiply(LuFactorization(to_dense(red.coarse_matrix())).inverse(),
                              to_dense(red.restriction_matrix())));
        const DenseMatrix term_black =
            multiply(to_dense(black.interpolation_matrix()),
                     multiply(LuFactorization(to_dense(black.coarse_matrix())).inverse(),
                              to_dense(black.restriction_matrix())));
        DenseMatrix factorization = add(term_red, term_black);
        if (!additive) {
            // Cross term from expanding K_black K_red = 0.
            const DenseMatrix coupling = multiply(
                term_black, multiply(to_dense(a), term_red));
            factorization = subtract(factorization, coupling);
        }
        push(out, label + ".inverse_factorization",
             frobenius_norm(subtract(factorization, a_inverse)) / frobenius_norm(a_inverse), 1e-9);

        // Direct-solver symbol conditions.
        const FilterSymbols lambda = extract_symbols(a, basis);
        FilterQuad resolved{part, config.red_restriction.resolve(a, part),
                            config.red_interpolation.resolve(a, part),
                            config.black_restriction.resolve(a, part),
                            config.black_interpolation.resolve(a, part)};
        SymbolQuad symbols = extract_symbol_quad(resolved, basis);
        const DirectConditionReport cond = check_direct_conditions(
            symbols, lambda,
            additive ? DirectSolverMode::additive : DirectSolverMode::multiplicative, tol);
        push(out, label + ".direct_condition", cond.worst(), tol);

        if (opts.break_symbol > 0.0) {
            symbols.black_interpolation_low[0] += opts.break_symbol;
            const DirectConditionReport broken = check_direct_conditions(
                symbols, lambda,
                additive ? DirectSolverMode::additive : DirectSolverMode::multiplicative, tol);
            push_flag(out, label + ".injected_fault_detected",
                      !broken.passes && broken.worst() >= 0.01 * opts.break_symbol);
        }

        // Solvers against the dense oracle.
        std::mt19937_64 rng(kSeed);
        const Vector f = random_signal(rng, n);
        const Vector exact = LuFactorization(to_dense(a)).solve(f);
        const Vector solved = additive ? solve_additive_2g(a, config, f).solution
                                       : solve_multiplicative_2g(a, config, f).solution;
        push(out, label + ".two_grid_oracle", norm2(subtract(solved, exact)) / norm2(exact), 1e-10);
    }

    // Hypothesis guard for the multiplicative configuration.
    const FilterSymbols lambda = extract_symbols(a, basis);
    double min_sum = 1e300;
    for (std::size_t j = 0; j < lambda.low.size(); ++j)
        min_sum = std::min(min_sum, std::abs(lambda.low[j] + lambda.high[j]));
    push_flag(out, "multiplicative.lambda_sum_nonzero", min_sum > 1e-13);
    return out;
}

// The multigrid checks pin their own sizes: each one is an oracle
// comparison whose dense cost must stay trivial.
std::vector<CheckResult> verify_multigrid(const VerifyOptions&) {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(kSeed);
    const double k = std::numbers::pi / 3.0;

    struct Case {
        std::string name;
        ProblemInstance problem;
    };
    std::vector<Case> cases;
    cases.push_back({"helmholtz1d_n64", helmholtz_periodic_1d(64, k)});
    cases.push_back({"helmholtz2d_N8", helmholtz_periodic_2d(8, k)});
    cases.push_back({"dirichlet1d_n32", dirichlet_laplacian_1d(32)});

    for (const Case& c : cases) {
        const SparseMatrix& a = c.problem.matrix;
        const Vector f = random_signal(rng, a.rows());
        const Vector exact = LuFactorization(to_dense(a)).solve(f);
        const SolveReport mult = dmg_multiplicative(a, f, c.problem.hierarchy);
        const SolveReport addi = dmg_additive(a, f, c.problem.hierarchy);
        push(out, c.name + ".multiplicative_vs_lu",
             norm2(subtract(mult.solution, exact)) / norm2(exact), 1e-9);
        push(out, c.name + ".additive_vs_lu", norm2(subtract(addi.solution, exact)) / norm2(exact),
             1e-9);
        push(out, c.name + ".multiplicative_residual", mult.relative_residual, 1e-9);
        push(out, c.name + ".additive_residual", addi.relative_residual, 1e-9);
    }

    // Flattened multichannel scheme agrees with the recursive driver.
    {
        const ProblemInstance problem = helmholtz_periodic_2d(8, k);
        const Vector f = random_signal(rng, problem.matrix.rows());
        const SolveReport addi = dmg_additive(problem.matrix, f, problem.hierarchy);
        const MultichannelReport multi =
            dmg_additive_multichannel(problem.matrix, f, problem.hierarchy, 2);
        push(out, "multichannel_depth2.matches_additive",
             norm2(subtract(multi.solution, addi.solution)) / norm2(addi.solution), 1e-10);
    }

    // Empirical recursion bound m(n) <= 2 m(n/2) + C n and the count ratio.
    {
        auto instance = [&](std::size_t n) {
            const ProblemInstance p = helmholtz_periodic_1d(n, k);
            return std::make_pair(p.matrix, p.hierarchy);
        };
        auto impulse = [](std::size_t n) {
            Vector f(n, Complex(0.0, 0.0));
            f[0] = 1.0;
            return f;
        };
        for (const DmgMethod method : {DmgMethod::multiplicative, DmgMethod::additive}) {
            const auto rows = count_complexity({64, 128, 256}, method, instance, impulse);
            double worst_ratio = 0;
            double worst_c = 0;
            for (std::size_t i = 1; i < rows.size(); ++i) {
                worst_ratio = std::max(worst_ratio, static_cast<double>(rows[i].multiplications)
                                                        / static_cast<double>(
                                                            rows[i - 1].multiplications));
                const double extra = static_cast<double>(rows[i].multiplications)
                                     - 2.0 * static_cast<double>(rows[i - 1].multiplications);
                worst_c = std::max(worst_c, extra / static_cast<double>(rows[i].n));
            }
            const std::string label =
                method == DmgMethod::multiplicative ? "multiplicative" : "additive";
            push(out, label + ".count_ratio", worst_ratio, 2.5);
            push(out, label + ".recursion_bound_c", worst_c, 64.0);
        }
    }
    return out;
}

std::vector<CheckResult> run_verify_suite(const std::string& suite, const VerifyOptions& opts) {
    std::vector<CheckResult> out;
    auto append = [&out](std::vector<CheckResult> more) {
        out.insert(out.end(), more.begin(), more.end());
    };
    if (suite == "aliasing" || suite == "all") append(verify_aliasing(opts));
    if (suite == "filterbank" || suite == "all") append(verify_filterbank(opts));
    if (suite == "twogrid" || suite == "all") append(verify_twogrid(opts));
    if (suite == "multigrid" || suite == "all") append(verify_multigrid(opts));
    if (out.empty()) throw std::invalid_argument("unknown verify suite '" + suite + "'");
    return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const CheckResult& r : results)
        if (!r.passed) return false;
    return true;
}

} // namespace rbmg
