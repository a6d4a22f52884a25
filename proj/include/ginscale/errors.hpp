#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ginscale {

/// Argument outside the mathematical domain of an operation (x < 0, b <= 1, r outside (0,1)).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical procedure (quadrature, root bracketing) failed to reach its target.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, double achieved_tolerance)
        : std::runtime_error(what), achieved_(achieved_tolerance) {}

    double achieved_tolerance() const noexcept { return achieved_; }

private:
    double achieved_;
};

/// Input data cannot support the requested statistic (empty record, zero citations, ...).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed cohort or table file; `line` is 1-based, 0 when not line-specific.
class ParseError : public DataError {
public:
    ParseError(const std::string& what, std::size_t line)
        : DataError(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace ginscale
