#pragma once

#include <stdexcept>
#include <string>

namespace berrylab {

// Shared failure vocabulary. Everything numeric in this library either
// returns a certified result or throws one of these; nothing reports
// failure through NaNs or sentinel values.

// A measure whose total mass is not 1 within tolerance.
struct TotalMassError : std::runtime_error {
    explicit TotalMassError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed geometry: empty or inverted intervals, non-finite inputs,
// negative masses or heights.
struct GeometryError : std::runtime_error {
    explicit GeometryError(const std::string& msg) : std::runtime_error(msg) {}
};

// Input outside the documented domain of an operation.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// A law with no usable rectangular density component.
struct NoDensityError : std::runtime_error {
    explicit NoDensityError(const std::string& msg) : std::runtime_error(msg) {}
};

// A computation that would run outside its numerically stable regime.
struct StabilityError : std::runtime_error {
    explicit StabilityError(const std::string& msg) : std::runtime_error(msg) {}
};

// A series or mixture truncation whose discarded tail exceeds the
// caller's tolerance even at the maximum supported order.
struct TruncationError : std::runtime_error {
    explicit TruncationError(const std::string& msg) : std::runtime_error(msg) {}
};

// An adaptive search that exhausted its evaluation budget before
// certifying the requested accuracy.
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

// Adaptive quadrature failed to meet the requested absolute tolerance
// within its subdivision budget.
struct QuadratureError : std::runtime_error {
    explicit QuadratureError(const std::string& msg) : std::runtime_error(msg) {}
};

// A parameter search that terminated without finding a witness.
struct SearchExhausted : std::runtime_error {
    explicit SearchExhausted(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace berrylab
