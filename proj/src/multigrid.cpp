#include "rbmg/multigrid.hpp"

#include <cmath>
#include <future>
#include <optional>

#include "rbmg/errors.hpp"
#include "rbmg/lu.hpp"
#include "rbmg/partition.hpp"

namespace rbmg {

namespace {

struct BranchResult {
    Vector solution;
    std::uint64_t multiplications = 0;
    std::vector<LevelVisit> visits;
};

// Diagonal extraction with a singularity guard; counts one division per node.
Vector solve_diagonal(const SparseMatrix& a, const Vector& f, std::size_t level,
                      const std::string& path, MulCounter* counter) {
    const std::size_t n = a.rows();
    Vector diag(n, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        const auto cols = a.row_cols(i);
        const auto vals = a.row_values(i);
        for (std::size_t k = 0; k < cols.size(); ++k)
            if (cols[k] == i) diag[i] = vals[k];
    }
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (diag[i] == Complex(0.0, 0.0))
            throw SingularCoarseMatrix(level, path, "zero diagonal entry");
        x[i] = f[i] / diag[i];
    }
    count(counter, n);
    return x;
}

class DmgDriver {
public:
    DmgDriver(DmgMethod method, const PartitionHierarchy& hierarchy, const DmgOptions& opts)
        : method_(method), hierarchy_(hierarchy), opts_(opts) {}

    BranchResult run(const SparseMatrix& a, const Vector& f, std::size_t level, std::string path,
                     unsigned thread_budget,
                     std::vector<std::pair<std::string, Vector>>* intermediates) const {
        BranchResult out;
        MulCounter counter;
        const std::size_t n = a.rows();
        if (f.size() != n || a.rows() != a.cols())
            throw DimensionMismatch("dmg: system/rhs shape mismatch");
        std::size_t widest_row = 0;
        for (std::size_t i = 0; i < n; ++i)
            widest_row = std::max(widest_row, a.row_cols(i).size());

        if (is_diagonal(a, opts_.diagonal_tol)) {
            out.solution = solve_diagonal(a, f, level, path, &counter);
            out.visits.push_back({level, path, n, widest_row, true});
            out.multiplications = counter.value;
            return out;
        }
        const bool range_exhausted =
            n <= opts_.dense_crossover && max_abs(a) > opts_.entry_growth_guard;
        if (n <= hierarchy_.base_size() || range_exhausted) {
            try {
                out.solution = LuFactorization(to_dense(a), &counter).solve(f, &counter);
            } catch (const SingularMatrix& err) {
                throw SingularCoarseMatrix(level, path, err.what());
            }
            out.visits.push_back({level, path, n, widest_row, false});
            out.multiplications = counter.value;
            return out;
        }
        const auto part = hierarchy_.partition(n, level);
        if (!part) throw HierarchyExhausted(level, path, n);
        out.visits.push_back({level, path, n, widest_row, false});

        if (method_ == DmgMethod::multiplicative)
            multiplicative_body(a, f, *part, level, path, out, counter, intermediates);
        else
            additive_body(a, f, *part, level, path, thread_budget, out, counter, intermediates);
        out.multiplications += counter.value;
        return out;
    }

private:
    void multiplicative_body(const SparseMatrix& a, const Vector& f, const RedBlackPartition& part,
                             std::size_t level, const std::string& path, BranchResult& out,
                             MulCounter& counter,
                             std::vector<std::pair<std::string, Vector>>* intermediates) const {
        // Nested iteration through the red coarse grid A_r = D A U.
        const Vector f_red = downsample(part, Color::red, f);
        const SparseMatrix a_red = color_submatrix(part, Color::red, Color::red, a);
        BranchResult red = run(a_red, f_red, level + 1, path + 'r', 0, nullptr);
        const Vector v0 = upsample(part, Color::red, red.solution);

        // Correction scheme: black coarse system of the residual with the
        // mirror interpolation I_I = A* U.
        const Vector r = subtract(f, spmv(a, v0, &counter));
        const Vector r_black = downsample(part, Color::black, r);
        const SparseMatrix interp = select_cols(mirror(part, a), part.black());
        const SparseMatrix a_black = spmm(select_rows(a, part.black()), interp, 0.0, &counter);
        BranchResult black = run(a_black, r_black, level + 1, path + 'b', 0, nullptr);
        const Vector e0 = spmv(interp, black.solution, &counter);

        out.solution = add(v0, e0);
        out.multiplications += red.multiplications + black.multiplications;
        out.visits.insert(out.visits.end(), red.visits.begin(), red.visits.end());
        out.visits.insert(out.visits.end(), black.visits.begin(), black.visits.end());
        if (intermediates) {
            intermediates->emplace_back("v0", v0);
            intermediates->emplace_back("r", r);
            intermediates->emplace_back("e0", e0);
        }
    }

    void additive_body(const SparseMatrix& a, const Vector& f, const RedBlackPartition& part,
                       std::size_t level, const std::string& path, unsigned thread_budget,
                       BranchResult& out, MulCounter& counter,
                       std::vector<std::pair<std::string, Vector>>* intermediates) const {
        const SparseMatrix mirrored = mirror(part, a);
        const SparseMatrix interp_red = select_cols(mirrored, part.red());
        const SparseMatrix interp_black = select_cols(mirrored, part.black());
        const SparseMatrix a_red = spmm(select_rows(a, part.red()), interp_red, 0.0, &counter);
        const SparseMatrix a_black =
            spmm(select_rows(a, part.black()), interp_black, 0.0, &counter);
        const Vector f_red = downsample(part, Color::red, f);
        const Vector f_black = downsample(part, Color::black, f);

        // The two nested iterations are independent; results are merged in
        // fixed red-then-black order so the output is thread-count invariant.
        BranchResult red, black;
        if (thread_budget > 1) {
            const unsigned child_budget = thread_budget / 2;
            auto red_future = std::async(std::launch::async, [&] {
                return run(a_red, f_red, level + 1, path + 'r', child_budget, nullptr);
            });
            black = run(a_black, f_black, level + 1, path + 'b', child_budget, nullptr);
            red = red_future.get();
        } else {
            red = run(a_red, f_red, level + 1, path + 'r', 0, nullptr);
            black = run(a_black, f_black, level + 1, path + 'b', 0, nullptr);
        }
        const Vector u_red = spmv(interp_red, red.solution, &counter);
        const Vector u_black = spmv(interp_black, black.solution, &counter);
        out.solution = add(u_red, u_black);
        out.multiplications += red.multiplications + black.multiplications;
        out.visits.insert(out.visits.end(), red.visits.begin(), red.visits.end());
        out.visits.insert(out.visits.end(), black.visits.begin(), black.visits.end());
        if (intermediates) {
            intermediates->emplace_back("v_red", u_red);
            intermediates->emplace_back("v_black", u_black);
        }
    }

    DmgMethod method_;
    const PartitionHierarchy& hierarchy_;
    const DmgOptions& opts_;
};

double residual_of(const SparseMatrix& a, const Vector& f, const Vector& v) {
    const double fnorm = norm2(f);
    if (fnorm == 0.0) return norm2(v) == 0.0 ? 0.0 : norm2(spmv(a, v));
    return norm2(subtract(f, spmv(a, v))) / fnorm;
}

SolveReport run_driver(DmgMethod method, const SparseMatrix& a, const Vector& f,
                       const PartitionHierarchy& hierarchy, const DmgOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    SolveReport report;
    DmgDriver driver(method, hierarchy, opts);
    BranchResult result = driver.run(a, f, 0, "", opts.threads, &report.intermediates);
    report.solution = std::move(result.solution);
    report.multiplications = result.multiplications;
    report.levels_visited = std::move(result.visits);
    report.relative_residual = residual_of(a, f, report.solution);
    report.wall_time = std::chrono::steady_clock::now() - start;
    return report;
}

} // namespace

SolveReport dmg_multiplicative(const SparseMatrix& a, const Vector& f,
                               const PartitionHierarchy& hierarchy, const DmgOptions& opts) {
    return run_driver(DmgMethod::multiplicative, a, f, hierarchy, opts);
}

SolveReport dmg_additive(const SparseMatrix& a, const Vector& f,
                         const PartitionHierarchy& hierarchy, const DmgOptions& opts) {
    return run_driver(DmgMethod::additive, a, f, hierarchy, opts);
}

namespace {

struct ChannelContext {
    const PartitionHierarchy& hierarchy;
    const DmgOptions& opts;
    std::size_t depth;
    const Vector& fine_source;
    MulCounter counter;
    std::vector<ChannelSolution> channels;
};

// Descends the binary coarsening tree, composing the pure-down-sampling
// restriction (an index map) and the per-level mirror interpolations.
// Channels are emitted in r-before-b order.
void descend(ChannelContext& ctx, const SparseMatrix& a,
             const std::optional<SparseMatrix>& interp, const std::vector<std::size_t>& fine_idx,
             std::size_t level, const std::string& path) {
    if (level == ctx.depth) {
        Vector rhs(fine_idx.size());
        bool zero = true;
        for (std::size_t i = 0; i < fine_idx.size(); ++i) {
            rhs[i] = ctx.fine_source[fine_idx[i]];
            zero = zero && rhs[i] == Complex(0.0, 0.0);
        }
        Vector x;
        if (a.rows() <= ctx.opts.dense_crossover) {
            try {
                x = LuFactorization(to_dense(a), &ctx.counter).solve(rhs, &ctx.counter);
            } catch (const SingularMatrix& err) {
                throw SingularCoarseMatrix(level, path, err.what());
            }
        } else {
            SolveReport sub =
                dmg_additive(a, rhs, ctx.hierarchy.shifted(level), ctx.opts);
            ctx.counter.add(sub.multiplications);
            x = std::move(sub.solution);
        }
        ChannelSolution channel;
        channel.path = path;
        channel.zero_source = zero;
        channel.size = a.rows();
        channel.interpolated = interp ? spmv(*interp, x, &ctx.counter) : std::move(x);
        ctx.channels.push_back(std::move(channel));
        return;
    }
    const auto part = ctx.hierarchy.partition(a.rows(), level);
    if (!part) throw HierarchyExhausted(level, path, a.rows());
    const SparseMatrix mirrored = mirror(*part, a);
    for (const Color color : {Color::red, Color::black}) {
        const auto nodes = part->nodes(color);
        const SparseMatrix step_interp = select_cols(mirrored, nodes);
        const SparseMatrix a_child = spmm(select_rows(a, nodes), step_interp, 0.0, &ctx.counter);
        std::optional<SparseMatrix> composed;
        if (interp)
            composed = spmm(*interp, step_interp, 0.0, &ctx.counter);
        else
            composed = step_interp;
        std::vector<std::size_t> child_idx(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) child_idx[i] = fine_idx[nodes[i]];
        descend(ctx, a_child, composed, child_idx, level + 1, path + color_char(color));
    }
}

} // namespace

MultichannelReport dmg_additive_multichannel(const SparseMatrix& a, const Vector& f,
                                             const PartitionHierarchy& hierarchy,
                                             std::size_t depth, const DmgOptions& opts) {
    if (f.size() != a.rows() || a.rows() != a.cols())
        throw DimensionMismatch("dmg_additive_multichannel: system/rhs shape mismatch");
    const auto start = std::chrono::steady_clock::now();
    MultichannelReport report;
    ChannelContext ctx{hierarchy, opts, depth, f, {}, {}};
    std::vector<std::size_t> identity_idx(a.rows());
    for (std::size_t i = 0; i < identity_idx.size(); ++i) identity_idx[i] = i;
    descend(ctx, a, std::nullopt, identity_idx, 0, "");

    Vector sum(a.rows(), Complex(0.0, 0.0));
    for (const ChannelSolution& c : ctx.channels) sum = add(sum, c.interpolated);
    report.solution = std::move(sum);
    report.channels = std::move(ctx.channels);
    report.multiplications = ctx.counter.value;
    report.relative_residual = residual_of(a, f, report.solution);
    report.wall_time = std::chrono::steady_clock::now() - start;
    return report;
}

std::vector<ComplexityRow> count_complexity(
    const std::vector<std::size_t>& sizes, DmgMethod method,
    const std::function<std::pair<SparseMatrix, PartitionHierarchy>(std::size_t)>& instance,
    const std::function<Vector(std::size_t)>& source, const DmgOptions& opts) {
    std::vector<ComplexityRow> rows;
    for (std::size_t n : sizes) {
        auto [a, hierarchy] = instance(n);
        const Vector f = source(n);
        const SolveReport report = method == DmgMethod::multiplicative
                                       ? dmg_multiplicative(a, f, hierarchy, opts)
                                       : dmg_additive(a, f, hierarchy, opts);
        ComplexityRow row;
        row.n = n;
        row.multiplications = report.multiplications;
        row.wall_seconds = report.wall_time.count();
        std::size_t diagonal = 0;
        for (const LevelVisit& v : report.levels_visited) diagonal += v.was_diagonal ? 1 : 0;
        row.diagonal_fraction = report.levels_visited.empty()
                                    ? 0.0
                                    : static_cast<double>(diagonal)
                                          / static_cast<double>(report.levels_visited.size());
        rows.push_back(row);
    }
    return rows;
}

} // namespace rbmg
