#pragma once

#include <stdexcept>
#include <string>

namespace cbm {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input fails a type invariant (too few vertices, zero area, non-convex, ...).
class DegenerateInputError : public Error {
public:
    explicit DegenerateInputError(const std::string& msg) : Error(msg) {}
};

// A value lies outside an operation's mathematical domain.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// An iterative search did not reach the requested residual.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& msg, double best_residual)
        : Error(msg), best_residual(best_residual) {}
    double best_residual;
};

// A containment or certification check that must hold failed.
class VerificationError : public Error {
public:
    explicit VerificationError(const std::string& msg) : Error(msg) {}
};

} // namespace cbm
