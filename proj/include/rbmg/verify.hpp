#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace rbmg {

struct CheckResult {
    std::string name;
    double residual = 0;
    double tolerance = 0;
    bool passed = false;
};

struct VerifyOptions {
    std::size_t n = 16;        // 1D problem/basis size for the parametrized checks
    std::string basis;         // restrict the aliasing suite: "sine8", "dft<n>", "dft2d<side>"
    double break_symbol = 0.0; // twogrid fault injection magnitude
    double tol = 1e-10;
};

/// Named theorem checks, one CheckResult per identity. Every failure is a
/// nonzero exit at the CLI, never a warning.
std::vector<CheckResult> verify_aliasing(const VerifyOptions& opts);
std::vector<CheckResult> verify_filterbank(const VerifyOptions& opts);
std::vector<CheckResult> verify_twogrid(const VerifyOptions& opts);
std::vector<CheckResult> verify_multigrid(const VerifyOptions& opts);

/// suite: aliasing | filterbank | twogrid | multigrid | all.
std::vector<CheckResult> run_verify_suite(const std::string& suite, const VerifyOptions& opts);

bool all_passed(const std::vector<CheckResult>& results);

} // namespace rbmg
