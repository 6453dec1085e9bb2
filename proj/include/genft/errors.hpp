#pragma once

#include <stdexcept>
#include <string>

namespace genft {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An integral or norm that does not exist for the given input.
class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical procedure failed (bracketing, non-convergence the caller cannot absorb).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parameters that are mathematically valid but outside what is implemented.
class UnsupportedParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input that makes a quotient or ratio meaningless (e.g. a zero norm in a denominator).
class DegenerateInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace genft
