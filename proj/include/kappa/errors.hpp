#pragma once

#include <stdexcept>
#include <string>

namespace kappa {

/// A precondition on an argument was violated (out-of-range κ, nonpositive step, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// An iterative numerical procedure could not meet its target (quadrature budget,
/// non-finite trace values).
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kappa
