// Shared constants and error types.
#pragma once

#include <stdexcept>
#include <string>

namespace qmux {

inline constexpr const char* kVersion = "0.1.0";

// Tolerance for exact algebraic identities (Hermiticity, idempotence, norms).
inline constexpr double kAlgebraTol = 1e-12;
// Tolerance for spectral quantities (eigenvalues, trace of large sums).
inline constexpr double kSpectralTol = 1e-10;

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad user input: configs, tables, CLI arguments, malformed files.
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Structurally valid input that cannot be processed (empty tables, zero counts).
struct DataError : Error {
    explicit DataError(const std::string& msg) : Error(msg) {}
};

// Numerical failure in an eigensolve or SDP.
struct SolverError : Error {
    explicit SolverError(const std::string& msg) : Error(msg) {}
};

}  // namespace qmux
