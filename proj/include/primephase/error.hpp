/// @file error.hpp
/// @brief Exception types thrown by the primephase library.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace primephase {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

/// Argument inside the domain but beyond what the implementation supports
/// (sieve ceiling, double-precision overflow, segment limit).
class RangeError : public std::out_of_range
{
public:
    using std::out_of_range::out_of_range;
};

/// Evaluation at the pole of zeta.
class PoleError : public DomainError
{
public:
    using DomainError::DomainError;
};

/// A series or quadrature failed to reach its tolerance.
class ToleranceError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration, e.g. a root bracket without a sign change.
class ConfigError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed input file. Carries the 1-based line number.
class ParseError : public std::runtime_error
{
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace primephase
