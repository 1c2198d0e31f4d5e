#include "rbmg/partition.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace rbmg {

Color opposite(Color c) { return c == Color::red ? Color::black : Color::red; }
char color_char(Color c) { return c == Color::red ? 'r' : 'b'; }

RedBlackPartition::RedBlackPartition(std::size_t n, std::vector<std::size_t> red_nodes)
    : n_(n), red_(std::move(red_nodes)) {
    if (n_ == 0 || n_ % 2 != 0)
        throw std::invalid_argument("partition: node count must be positive and even");
    if (red_.size() != n_ / 2)
        throw std::invalid_argument("partition: red set must contain exactly half the nodes");
    std::vector<char> is_red(n_, 0);
    std::size_t prev = 0;
    bool first = true;
    for (std::size_t i : red_) {
        if (i >= n_) throw std::invalid_argument("partition: red index out of range");
        if (!first && i <= prev)
            throw std::invalid_argument("partition: red list must be strictly increasing");
        prev = i;
        first = false;
        is_red[i] = 1;
    }
    black_.reserve(n_ / 2);
    signs_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        signs_[i] = is_red[i] ? 1.0 : -1.0;
        if (!is_red[i]) black_.push_back(i);
    }
}

RedBlackPartition RedBlackPartition::even_odd(std::size_t n) {
    std::vector<std::size_t> red;
    red.reserve(n / 2);
    for (std::size_t i = 0; i < n; i += 2) red.push_back(i);
    return RedBlackPartition(n, std::move(red));
}

RedBlackPartition RedBlackPartition::chessboard(std::size_t side) {
    std::vector<std::size_t> red;
    red.reserve(side * side / 2);
    for (std::size_t i = 0; i < side; ++i)
        for (std::size_t j = 0; j < side; ++j)
            if ((i + j) % 2 == 0) red.push_back(i * side + j);
    return RedBlackPartition(side * side, std::move(red));
}

RedBlackPartition RedBlackPartition::row_parity(std::size_t rows, std::size_t cols) {
    std::vector<std::size_t> red;
    red.reserve(rows * cols / 2);
    for (std::size_t i = 0; i < rows; i += 2)
        for (std::size_t j = 0; j < cols; ++j) red.push_back(i * cols + j);
    return RedBlackPartition(rows * cols, std::move(red));
}

std::span<const std::size_t> RedBlackPartition::nodes(Color c) const {
    return c == Color::red ? red() : black();
}

std::string RedBlackPartition::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n_;
    j["red"] = red_;
    return j.dump();
}

RedBlackPartition RedBlackPartition::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    return RedBlackPartition(j.at("n").get<std::size_t>(),
                             j.at("red").get<std::vector<std::size_t>>());
}

bool RedBlackPartition::operator==(const RedBlackPartition& other) const {
    return n_ == other.n_ && red_ == other.red_;
}

Vector downsample(const RedBlackPartition& p, Color c, const Vector& x) {
    if (x.size() != p.size()) throw DimensionMismatch("downsample: vector length mismatch");
    const auto nodes = p.nodes(c);
    Vector y(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) y[i] = x[nodes[i]];
    return y;
}

Vector upsample(const RedBlackPartition& p, Color c, const Vector& y) {
    const auto nodes = p.nodes(c);
    if (y.size() != nodes.size()) throw DimensionMismatch("upsample: vector length mismatch");
    Vector x(p.size(), Complex(0.0, 0.0));
    for (std::size_t i = 0; i < nodes.size(); ++i) x[nodes[i]] = y[i];
    return x;
}

SparseMatrix mirror(const RedBlackPartition& p, const SparseMatrix& m) {
    if (m.rows() != m.cols() || m.rows() != p.size())
        throw DimensionMismatch("mirror: matrix must be square with the partition's size");
    std::vector<Triplet> t = m.triplets();
    for (Triplet& e : t) e.value *= p.sign(e.row) * p.sign(e.col);
    return SparseMatrix(m.rows(), m.cols(), std::move(t));
}

DenseMatrix mirror(const RedBlackPartition& p, const DenseMatrix& m) {
    if (m.rows() != m.cols() || m.rows() != p.size())
        throw DimensionMismatch("mirror: matrix must be square with the partition's size");
    DenseMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = p.sign(i) * m(i, j) * p.sign(j);
    return out;
}

SparseMatrix color_submatrix(const RedBlackPartition& p, Color row_color, Color col_color,
                             const SparseMatrix& m) {
    if (m.rows() != p.size() || m.cols() != p.size())
        throw DimensionMismatch("color_submatrix: matrix must be square with the partition's size");
    return select_cols(select_rows(m, p.nodes(row_color)), p.nodes(col_color));
}

SparseMatrix downsampling_matrix(const RedBlackPartition& p, Color c) {
    const auto nodes = p.nodes(c);
    std::vector<Triplet> t(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) t[i] = {i, nodes[i], Complex(1.0, 0.0)};
    return SparseMatrix(nodes.size(), p.size(), std::move(t));
}

SparseMatrix upsampling_matrix(const RedBlackPartition& p, Color c) {
    return conj_transpose(downsampling_matrix(p, c));
}

} // namespace rbmg
