#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tdldos {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter record violates one of its invariants.
class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& constraint)
        : Error(field + ": " + constraint), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Adaptive quadrature could not reach the requested tolerance.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, double estimate, double error_bound)
        : Error(what + " (estimate " + std::to_string(estimate) + ", error bound " +
                std::to_string(error_bound) + ")"),
          estimate_(estimate), error_bound_(error_bound) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

/// The ODE step size collapsed below round-off.
class IntegrationError : public Error {
public:
    explicit IntegrationError(double t)
        : Error("stiff or discontinuous input at t=" + std::to_string(t) + " ps"), t_(t) {}

    double time() const noexcept { return t_; }

private:
    double t_;
};

/// Malformed scenario document. Line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                message),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace tdldos
