#include "rbmg/io.hpp"

#include <cctype>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rbmg/errors.hpp"

namespace rbmg {

namespace {

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

} // namespace

SparseMatrix read_matrix_market(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw IoError("matrix market: empty stream");
    std::istringstream header(line);
    std::string banner, object, format, field, symmetry;
    header >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket" || lower(object) != "matrix" || lower(format) != "coordinate")
        throw IoError("matrix market: expected a coordinate-format header");
    field = lower(field);
    symmetry = lower(symmetry);
    const bool complex_field = field == "complex";
    const bool pattern = field == "pattern";
    if (!complex_field && !pattern && field != "real" && field != "integer")
        throw IoError("matrix market: unsupported field '" + field + "'");
    if (symmetry != "general" && symmetry != "symmetric" && symmetry != "hermitian"
        && symmetry != "skew-symmetric")
        throw IoError("matrix market: unsupported symmetry '" + symmetry + "'");

    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '%') break;
    }
    std::istringstream dims(line);
    std::size_t rows = 0, cols = 0, entries = 0;
    if (!(dims >> rows >> cols >> entries)) throw IoError("matrix market: bad size line");

    std::vector<Triplet> t;
    t.reserve(entries * (symmetry == "general" ? 1 : 2));
    for (std::size_t e = 0; e < entries; ++e) {
        if (!std::getline(in, line)) throw IoError("matrix market: truncated entry list");
        if (line.empty() || line[0] == '%') {
            --e;
            continue;
        }
        std::istringstream entry(line);
        std::size_t i = 0, j = 0;
        double re = 1.0, im = 0.0;
        if (!(entry >> i >> j)) throw IoError("matrix market: bad entry line");
        if (!pattern && !(entry >> re)) throw IoError("matrix market: bad entry value");
        if (complex_field && !(entry >> im)) throw IoError("matrix market: missing imaginary part");
        if (i < 1 || j < 1 || i > rows || j > cols)
            throw IoError("matrix market: index out of range");
        const Complex v(re, im);
        t.push_back({i - 1, j - 1, v});
        if (i != j) {
            if (symmetry == "symmetric")
                t.push_back({j - 1, i - 1, v});
            else if (symmetry == "hermitian")
                t.push_back({j - 1, i - 1, std::conj(v)});
            else if (symmetry == "skew-symmetric")
                t.push_back({j - 1, i - 1, -v});
        }
    }
    try {
        return SparseMatrix(rows, cols, std::move(t));
    } catch (const std::invalid_argument& err) {
        throw IoError(std::string("matrix market: ") + err.what());
    }
}

SparseMatrix read_matrix_market_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const SparseMatrix& a) {
    bool complex_field = false;
    for (const Complex& v : a.values())
        if (v.imag() != 0.0) {
            complex_field = true;
            break;
        }
    out << "%%MatrixMarket matrix coordinate " << (complex_field ? "complex" : "real")
        << " general\n";
    out << a.rows() << ' ' << a.cols() << ' ' << a.nnz() << '\n';
    char buf[96];
    for (const Triplet& e : a.triplets()) {
        if (complex_field)
            std::snprintf(buf, sizeof buf, "%zu %zu %.17g %.17g\n", e.row + 1, e.col + 1,
                          e.value.real(), e.value.imag());
        else
            std::snprintf(buf, sizeof buf, "%zu %zu %.17g\n", e.row + 1, e.col + 1,
                          e.value.real());
        out << buf;
    }
    if (!out) throw IoError("matrix market: write failed");
}

void write_matrix_market_file(const std::string& path, const SparseMatrix& a) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_matrix_market(out, a);
}

Vector read_vector_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    Vector x;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        double re = 0, im = 0;
        const int got = std::sscanf(line.c_str(), "%lf,%lf", &re, &im);
        if (got < 1)
            throw IoError("vector csv: bad line " + std::to_string(lineno) + " in '" + path + "'");
        if (!std::isfinite(re) || (got >= 2 && !std::isfinite(im)))
            throw IoError("vector csv: non-finite entry at line " + std::to_string(lineno)
                          + " in '" + path + "'");
        x.push_back(Complex(re, got >= 2 ? im : 0.0));
    }
    if (x.empty()) throw IoError("vector csv: no entries in '" + path + "'");
    return x;
}

void write_vector_csv(const std::string& path, const Vector& x) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    char buf[80];
    for (const Complex& v : x) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", v.real(), v.imag());
        out << buf;
    }
    if (!out) throw IoError("vector csv: write failed");
}

void write_field_csv(const std::string& path, const Vector& x, std::size_t side_or_zero) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    char buf[112];
    if (side_or_zero == 0) {
        out << "i,re,im\n";
        for (std::size_t i = 0; i < x.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", i, x[i].real(), x[i].imag());
            out << buf;
        }
    } else {
        const std::size_t side = side_or_zero;
        if (x.size() != side * side)
            throw DimensionMismatch("field dump: vector is not a side-by-side field");
        out << "i,j,re,im\n";
        for (std::size_t i = 0; i < side; ++i)
            for (std::size_t j = 0; j < side; ++j) {
                const Complex& v = x[i * side + j];
                std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g,%.17g\n", i, j, v.real(), v.imag());
                out << buf;
            }
    }
    if (!out) throw IoError("field dump: write failed");
}

namespace {

nlohmann::ordered_json visits_json(const std::vector<LevelVisit>& visits) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const LevelVisit& v : visits) {
        nlohmann::ordered_json item;
        item["level"] = v.level;
        item["path"] = v.path;
        item["size"] = v.size;
        item["max_row_nonzeros"] = v.max_row_nonzeros;
        item["was_diagonal"] = v.was_diagonal;
        arr.push_back(item);
    }
    return arr;
}

} // namespace

std::string solve_report_json(const SolveReport& report, const std::string& problem,
                              const std::string& method) {
    nlohmann::ordered_json j;
    j["problem"] = problem;
    j["method"] = method;
    j["n"] = report.solution.size();
    j["multiplications"] = report.multiplications;
    j["relative_residual"] = report.relative_residual;
    j["wall_seconds"] = report.wall_time.count();
    j["levels_visited"] = visits_json(report.levels_visited);
    return j.dump(2);
}

std::string multichannel_report_json(const MultichannelReport& report,
                                     const std::string& problem) {
    nlohmann::ordered_json j;
    j["problem"] = problem;
    j["method"] = "additive-multichannel";
    j["n"] = report.solution.size();
    j["multiplications"] = report.multiplications;
    j["relative_residual"] = report.relative_residual;
    j["wall_seconds"] = report.wall_time.count();
    nlohmann::ordered_json channels = nlohmann::ordered_json::array();
    for (const ChannelSolution& c : report.channels) {
        nlohmann::ordered_json item;
        item["path"] = c.path;
        item["size"] = c.size;
        item["zero_source"] = c.zero_source;
        channels.push_back(item);
    }
    j["channels"] = channels;
    return j.dump(2);
}

} // namespace rbmg
