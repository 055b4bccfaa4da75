#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace blockform {

/// Shapes that do not fit the operation (non-square, mismatched sizes, bad index lists).
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A tensor-space construction would exceed the column budget.
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Input violates a mathematical precondition (not PSD, non-Hermitian, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Cholesky-type factorization hit a non-positive pivot.
class FactorizationError : public std::runtime_error {
public:
    FactorizationError(const std::string& what, std::size_t pivot)
        : std::runtime_error(what + " (pivot " + std::to_string(pivot) + ")"), pivot_(pivot) {}

    std::size_t pivot() const noexcept { return pivot_; }

private:
    std::size_t pivot_;
};

/// A quantity that must be real came out with a significant imaginary part.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace blockform
