#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rbmg {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Dense factorization hit a pivot below the singularity floor.
class SingularMatrix : public Error {
public:
    using Error::Error;
};

/// A coarse system encountered during a two-grid or multi-grid solve is
/// singular. Carries the level and color path where it was detected.
class SingularCoarseMatrix : public Error {
public:
    SingularCoarseMatrix(std::size_t level, std::string path, const std::string& what)
        : Error("singular coarse matrix at level " + std::to_string(level) + " path '" + path
                + "': " + what),
          level_(level),
          path_(std::move(path)) {}

    std::size_t level() const { return level_; }
    const std::string& path() const { return path_; }

private:
    std::size_t level_;
    std::string path_;
};

/// The partition hierarchy ran out of levels before the base-case size.
class HierarchyExhausted : public Error {
public:
    HierarchyExhausted(std::size_t level, const std::string& path, std::size_t size)
        : Error("no partition available at level " + std::to_string(level) + " path '" + path
                + "' (grid size " + std::to_string(size) + ")"),
          level_(level) {}

    std::size_t level() const { return level_; }

private:
    std::size_t level_;
};

/// A matrix handed to symbol extraction is not a filter in the given basis
/// (off-diagonal leakage of V^H F W above the threshold).
class NotAFilter : public Error {
public:
    using Error::Error;
};

/// Basis fails biorthogonality (V^H W deviates from I beyond tolerance).
class NotBiorthogonal : public Error {
public:
    using Error::Error;
};

/// Basis fails the red-black harmonic aliasing check where one is required.
class NoAliasingPattern : public Error {
public:
    using Error::Error;
};

/// File or stream I/O failure.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace rbmg
