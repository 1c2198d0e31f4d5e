// Command-line surface for the direct multigrid library: solve, verify and
// bench subcommands. Exit codes are the scripting contract:
//   0 success, 1 residual/check failure, 2 singular system,
//   3 I/O failure, 4 invalid configuration.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "rbmg/errors.hpp"
#include "rbmg/io.hpp"
#include "rbmg/lu.hpp"
#include "rbmg/multigrid.hpp"
#include "rbmg/problems.hpp"
#include "rbmg/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitSingular = 2;
constexpr int kExitIo = 3;
constexpr int kExitConfig = 4;

// Wavenumbers and angles: "pi", "pi/3", "2pi/3" or a plain decimal, parsed
// to full double precision (no decimal truncation of pi-multiples).
double parse_angle(const std::string& text) {
    const auto pos = text.find("pi");
    if (pos == std::string::npos) {
        std::size_t used = 0;
        const double value = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("bad numeric token '" + text + "'");
        return value;
    }
    double coefficient = 1.0;
    if (pos > 0) {
        std::string head = text.substr(0, pos);
        if (!head.empty() && head.back() == '*') head.pop_back();
        if (head == "-")
            coefficient = -1.0;
        else if (!head.empty())
            coefficient = std::stod(head);
    }
    double divisor = 1.0;
    if (pos + 2 < text.size()) {
        const std::string tail = text.substr(pos + 2);
        if (tail.size() < 2 || tail[0] != '/')
            throw std::invalid_argument("bad angle token '" + text + "'");
        divisor = std::stod(tail.substr(1));
    }
    return coefficient * std::numbers::pi / divisor;
}

std::string resolve_output_path(const std::string& path) {
    const char* dir = std::getenv("RBMG_OUTPUT_DIR");
    if (!dir || *dir == '\0') return path;
    const std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    return (std::filesystem::path(dir) / p).string();
}

struct SolveOptions {
    std::string problem = "helmholtz2d";
    std::size_t n = 32;
    std::size_t side = 32;
    std::string k_text = "pi/3";
    std::string method = "multiplicative";
    std::string source = "two-frequency";
    std::size_t depth = 3;
    std::size_t base_size = 16;
    unsigned threads = 1;
    double residual_threshold = 1e-9;
    std::string out_path;
    std::string dump_dir;
    std::string matrix_path;
};

rbmg::ProblemInstance build_problem(const SolveOptions& opt) {
    if (!opt.matrix_path.empty()) {
        rbmg::SparseMatrix a = rbmg::read_matrix_market_file(opt.matrix_path);
        if (a.rows() != a.cols()) throw std::invalid_argument("--matrix: system must be square");
        // External systems get the generic index-parity hierarchy; no
        // direct-solver guarantee is implied.
        rbmg::ProblemInstance p{"external",
                                std::move(a),
                                rbmg::PartitionHierarchy::ring(opt.base_size),
                                rbmg::Geometry::ring,
                                0,
                                0.0,
                                {}};
        p.extent = p.matrix.rows();
        return p;
    }
    const double k = parse_angle(opt.k_text);
    if (opt.problem == "helmholtz1d") return rbmg::helmholtz_periodic_1d(opt.n, k, opt.base_size);
    if (opt.problem == "helmholtz2d")
        return rbmg::helmholtz_periodic_2d(opt.side, k, opt.base_size);
    if (opt.problem == "dirichlet1d") return rbmg::dirichlet_laplacian_1d(opt.n);
    throw std::invalid_argument("unknown problem '" + opt.problem + "'");
}

void dump_field(const std::string& dir, const std::string& name, const rbmg::Vector& field,
                std::size_t side_or_zero) {
    const auto path = std::filesystem::path(resolve_output_path(dir)) / (name + ".csv");
    rbmg::write_field_csv(path.string(), field, side_or_zero);
}

int run_solve(const SolveOptions& opt) {
    const rbmg::ProblemInstance problem = build_problem(opt);
    const rbmg::Vector f = rbmg::make_source(rbmg::SourceSpec::parse(opt.source), problem);
    const std::size_t side = problem.geometry == rbmg::Geometry::torus ? problem.extent : 0;

    rbmg::DmgOptions dmg_opts;
    dmg_opts.threads = opt.threads;
    if (!opt.dump_dir.empty())
        std::filesystem::create_directories(resolve_output_path(opt.dump_dir));

    rbmg::SolveReport report;
    std::string report_json;
    if (opt.method == "dense") {
        const auto start = std::chrono::steady_clock::now();
        rbmg::MulCounter counter;
        report.solution =
            rbmg::LuFactorization(rbmg::to_dense(problem.matrix), &counter).solve(f, &counter);
        report.multiplications = counter.value;
        const rbmg::Vector residual =
            rbmg::subtract(f, rbmg::spmv(problem.matrix, report.solution));
        report.relative_residual = rbmg::norm2(residual) / rbmg::norm2(f);
        report.wall_time = std::chrono::steady_clock::now() - start;
        report_json = rbmg::solve_report_json(report, problem.family, opt.method);
    } else if (opt.method == "multiplicative") {
        report = rbmg::dmg_multiplicative(problem.matrix, f, problem.hierarchy, dmg_opts);
        report_json = rbmg::solve_report_json(report, problem.family, opt.method);
    } else if (opt.method == "additive") {
        report = rbmg::dmg_additive(problem.matrix, f, problem.hierarchy, dmg_opts);
        report_json = rbmg::solve_report_json(report, problem.family, opt.method);
    } else if (opt.method == "additive-multichannel") {
        rbmg::MultichannelReport multi =
            rbmg::dmg_additive_multichannel(problem.matrix, f, problem.hierarchy, opt.depth,
                                            dmg_opts);
        report_json = rbmg::multichannel_report_json(multi, problem.family);
        report.solution = multi.solution;
        report.relative_residual = multi.relative_residual;
        report.multiplications = multi.multiplications;
        report.wall_time = multi.wall_time;
        if (!opt.dump_dir.empty())
            for (const rbmg::ChannelSolution& c : multi.channels)
                dump_field(opt.dump_dir, "u_" + c.path, c.interpolated, side);
    } else {
        throw std::invalid_argument("unknown method '" + opt.method + "'");
    }

    if (!opt.dump_dir.empty()) {
        dump_field(opt.dump_dir, "source", f, side);
        dump_field(opt.dump_dir, "solution", report.solution, side);
        for (const auto& [name, field] : report.intermediates)
            dump_field(opt.dump_dir, name, field, side);
    }
    if (!opt.out_path.empty()) {
        std::ofstream out(resolve_output_path(opt.out_path));
        if (!out) throw rbmg::IoError("cannot open '" + opt.out_path + "' for writing");
        out << report_json << '\n';
    }
    std::printf("%s %s n=%zu residual=%.3e multiplications=%llu wall=%.3fs\n",
                problem.family.c_str(), opt.method.c_str(), report.solution.size(),
                report.relative_residual,
                static_cast<unsigned long long>(report.multiplications),
                report.wall_time.count());
    return report.relative_residual <= opt.residual_threshold ? kExitOk : kExitCheckFailed;
}

int run_verify(const std::string& suite, const rbmg::VerifyOptions& opts) {
    const std::vector<rbmg::CheckResult> results = rbmg::run_verify_suite(suite, opts);
    for (const rbmg::CheckResult& r : results)
        std::printf("%s %-55s residual=%.3e tol=%.1e\n", r.passed ? "PASS" : "FAIL",
                    r.name.c_str(), r.residual, r.tolerance);
    const std::size_t failed =
        static_cast<std::size_t>(std::count_if(results.begin(), results.end(),
                                               [](const rbmg::CheckResult& r) {
                                                   return !r.passed;
                                               }));
    std::printf("%zu/%zu checks passed\n", results.size() - failed, results.size());
    return failed == 0 ? kExitOk : kExitCheckFailed;
}

struct BenchOptions {
    std::string problem = "helmholtz1d";
    std::string method = "multiplicative";
    std::string k_text = "pi/3";
    std::vector<std::size_t> sizes;
    std::size_t base_size = 16;
    std::string out_path;
};

int run_bench(const BenchOptions& opt) {
    const double k = parse_angle(opt.k_text);
    auto instance = [&](std::size_t n) {
        if (opt.problem == "helmholtz1d") {
            const rbmg::ProblemInstance p = rbmg::helmholtz_periodic_1d(n, k, opt.base_size);
            return std::make_pair(p.matrix, p.hierarchy);
        }
        if (opt.problem == "helmholtz2d") {
            const rbmg::ProblemInstance p = rbmg::helmholtz_periodic_2d(n, k, opt.base_size);
            return std::make_pair(p.matrix, p.hierarchy);
        }
        throw std::invalid_argument("bench supports helmholtz1d and helmholtz2d");
    };
    auto impulse = [&](std::size_t n) {
        const std::size_t unknowns = opt.problem == "helmholtz2d" ? n * n : n;
        rbmg::Vector f(unknowns, rbmg::Complex(0.0, 0.0));
        f[0] = 1.0;
        return f;
    };
    const rbmg::DmgMethod method = opt.method == "additive" ? rbmg::DmgMethod::additive
                                                            : rbmg::DmgMethod::multiplicative;
    if (opt.method != "additive" && opt.method != "multiplicative")
        throw std::invalid_argument("bench method must be multiplicative or additive");
    const auto rows = rbmg::count_complexity(opt.sizes, method, instance, impulse);

    std::string csv = "n,multiplications,wall_seconds,vcycle_fraction\n";
    char line[128];
    for (const rbmg::ComplexityRow& row : rows) {
        std::snprintf(line, sizeof line, "%zu,%llu,%.6f,%.4f\n", row.n,
                      static_cast<unsigned long long>(row.multiplications), row.wall_seconds,
                      row.diagonal_fraction);
        csv += line;
    }
    if (!opt.out_path.empty()) {
        std::ofstream out(resolve_output_path(opt.out_path));
        if (!out) throw rbmg::IoError("cannot open '" + opt.out_path + "' for writing");
        out << csv;
    } else {
        std::fputs(csv.c_str(), stdout);
    }
    return kExitOk;
}

// --config file.json supplies defaults for the solve flags; values given on
// the command line override it. Keys match the flag names.
void apply_json_config(SolveOptions& opt, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw rbmg::IoError("cannot open config '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& err) {
        throw std::invalid_argument("config parse error: " + std::string(err.what()));
    }
    const auto text = [](const nlohmann::json& v) {
        return v.is_string() ? v.get<std::string>() : v.dump();
    };
    for (const auto& [key, value] : j.items()) {
        if (key == "problem")
            opt.problem = text(value);
        else if (key == "n")
            opt.n = value.get<std::size_t>();
        else if (key == "N")
            opt.side = value.get<std::size_t>();
        else if (key == "k")
            opt.k_text = text(value);
        else if (key == "method")
            opt.method = text(value);
        else if (key == "source")
            opt.source = text(value);
        else if (key == "depth")
            opt.depth = value.get<std::size_t>();
        else if (key == "n0")
            opt.base_size = value.get<std::size_t>();
        else if (key == "threads")
            opt.threads = value.get<unsigned>();
        else if (key == "residual-threshold")
            opt.residual_threshold = value.get<double>();
        else if (key == "out")
            opt.out_path = text(value);
        else if (key == "dump-fields")
            opt.dump_dir = text(value);
        else if (key == "matrix")
            opt.matrix_path = text(value);
        else
            throw std::invalid_argument("config key '" + key + "' is not a solve flag");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Direct multigrid solvers for systems with red-black harmonic aliasing"};
    app.require_subcommand(1);

    SolveOptions solve_opt;
    std::string config_path;
    CLI::App* solve = app.add_subcommand("solve", "solve a built-in or loaded system exactly");
    solve->add_option("--problem", solve_opt.problem, "helmholtz1d | helmholtz2d | dirichlet1d");
    solve->add_option("--n", solve_opt.n, "unknowns for 1D problems");
    solve->add_option("--N", solve_opt.side, "side length for 2D problems");
    solve->add_option("--k", solve_opt.k_text, "wavenumber (e.g. pi/3 or 1.047)");
    solve->add_option("--method", solve_opt.method,
                      "multiplicative | additive | additive-multichannel | dense");
    solve->add_option("--source", solve_opt.source,
                      "two-frequency | point-patch | unit-impulse | file:PATH");
    solve->add_option("--depth", solve_opt.depth, "multichannel coarsening depth");
    solve->add_option("--n0", solve_opt.base_size, "base-case size");
    solve->add_option("--threads", solve_opt.threads, "cap on concurrent additive branches");
    solve->add_option("--residual-threshold", solve_opt.residual_threshold,
                      "exit 0 iff the relative residual is at or below this");
    solve->add_option("--out", solve_opt.out_path, "write the solve report JSON here");
    solve->add_option("--dump-fields", solve_opt.dump_dir,
                      "directory for plot-ready CSV dumps of source, solution and intermediates");
    solve->add_option("--matrix", solve_opt.matrix_path, "load the system from Matrix Market");
    solve->add_option("--config", config_path, "JSON file with defaults for these flags");

    rbmg::VerifyOptions verify_opt;
    std::string suite = "all";
    CLI::App* verify = app.add_subcommand("verify", "run the numerical theorem checks");
    verify->add_option("--suite", suite, "aliasing | filterbank | twogrid | multigrid | all");
    verify->add_option("--n", verify_opt.n, "1D size used by the parametrized checks");
    verify->add_option("--basis", verify_opt.basis,
                       "restrict the aliasing suite: sine8 | dft<n> | dft2d<side>");
    verify->add_option("--break-symbol", verify_opt.break_symbol,
                       "inject a symbol fault of this magnitude (twogrid suite)");
    verify->add_option("--tol", verify_opt.tol, "check tolerance");

    BenchOptions bench_opt;
    std::string sizes_text = "64,128,256,512,1024,2048";
    CLI::App* bench = app.add_subcommand("bench", "multiplication-count sweep");
    bench->add_option("--problem", bench_opt.problem, "helmholtz1d | helmholtz2d");
    bench->add_option("--method", bench_opt.method, "multiplicative | additive");
    bench->add_option("--k", bench_opt.k_text, "wavenumber");
    bench->add_option("--sizes", sizes_text, "comma-separated sizes (n for 1D, side for 2D)");
    bench->add_option("--n0", bench_opt.base_size, "base-case size");
    bench->add_option("--out", bench_opt.out_path, "write CSV here instead of stdout");

    try {
        // The config file provides defaults; reading it before the parse
        // lets explicit flags overwrite them.
        for (int i = 1; i + 1 < argc; ++i)
            if (std::string(argv[i]) == "--config") apply_json_config(solve_opt, argv[i + 1]);
        app.parse(argc, argv);
        if (solve->parsed()) return run_solve(solve_opt);
        if (verify->parsed()) return run_verify(suite, verify_opt);
        if (bench->parsed()) {
            for (std::size_t pos = 0; pos < sizes_text.size();) {
                const std::size_t comma = sizes_text.find(',', pos);
                const std::string token = sizes_text.substr(
                    pos, comma == std::string::npos ? std::string::npos : comma - pos);
                if (!token.empty()) bench_opt.sizes.push_back(std::stoul(token));
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
            return run_bench(bench_opt);
        }
    } catch (const CLI::ParseError& err) {
        return app.exit(err) == 0 ? kExitOk : kExitConfig;
    } catch (const rbmg::SingularCoarseMatrix& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return kExitSingular;
    } catch (const rbmg::SingularMatrix& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return kExitSingular;
    } catch (const rbmg::IoError& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return kExitIo;
    } catch (const rbmg::HierarchyExhausted& err) {
        // The requested hierarchy/depth cannot cover the problem.
        std::fprintf(stderr, "error: %s\n", err.what());
        return kExitConfig;
    } catch (const std::invalid_argument& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return kExitConfig;
    } catch (const rbmg::Error& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return kExitCheckFailed;
    }
    return kExitConfig;
}
