#pragma once

#include <iosfwd>
#include <string>

#include "rbmg/multigrid.hpp"
#include "rbmg/sparse.hpp"

namespace rbmg {

/// Matrix Market coordinate reader: real, complex, integer and pattern
/// fields; general, symmetric, hermitian and skew-symmetric storage.
/// Throws IoError on malformed input.
SparseMatrix read_matrix_market(std::istream& in);
SparseMatrix read_matrix_market_file(const std::string& path);

/// Coordinate writer; emits the real field when every entry has zero
/// imaginary part, the complex field otherwise.
void write_matrix_market(std::ostream& out, const SparseMatrix& a);
void write_matrix_market_file(const std::string& path, const SparseMatrix& a);

/// Dense vectors as one entry per line, "re,im" (a bare "re" reads as a
/// real entry).
Vector read_vector_csv(const std::string& path);
void write_vector_csv(const std::string& path, const Vector& x);

/// Plot-ready field dump: "i,j,re,im" rows for a side-by-side torus field,
/// "i,re,im" for a 1D field. Output is bit-deterministic for fixed input.
void write_field_csv(const std::string& path, const Vector& x, std::size_t side_or_zero);

/// Solve report as JSON (solution omitted; fields, counts and level visits
/// included).
std::string solve_report_json(const SolveReport& report, const std::string& problem,
                              const std::string& method);
std::string multichannel_report_json(const MultichannelReport& report, const std::string& problem);

} // namespace rbmg
