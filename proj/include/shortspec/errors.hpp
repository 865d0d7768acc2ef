#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace shortspec {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (sqrt(-1), arg(0), ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Bad configuration value: digits < 16, explicit K > N, negative eta, ...
class ParameterError : public Error {
public:
    using Error::Error;
};

class SizeError : public Error {
public:
    using Error::Error;
};

class InvalidModelError : public Error {
public:
    using Error::Error;
};

// Precondition on matrix structure violated (e.g. non-Hermitian input to hermitian_eig).
class ContractError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, int iterations, double residual)
        : Error(what + " (iterations=" + std::to_string(iterations) +
                ", residual=" + std::to_string(residual) + ")"),
          iterations_(iterations), residual_(residual) {}

    int iterations() const noexcept { return iterations_; }
    double residual() const noexcept { return residual_; }

private:
    int iterations_;
    double residual_;
};

class RankError : public Error {
public:
    RankError(const std::string& what, std::size_t column)
        : Error(what), column_(column) {}

    // Index of the first numerically dependent column (or eigen-direction).
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

// No eigenvalue of the overlap matrix survived the rank threshold.
class EmptyRankError : public Error {
public:
    using Error::Error;
};

// Failure inside invert(), tagged with the stage that raised it.
class InversionError : public Error {
public:
    InversionError(std::string stage, std::string kind, const std::string& what)
        : Error(stage + ": " + what), stage_(std::move(stage)), kind_(std::move(kind)) {}

    // build_matrices | overlap_eig | detect_rank | solve_pencil | recover_amplitudes
    const std::string& stage() const noexcept { return stage_; }
    // Class of the underlying error, e.g. "empty_rank", "convergence", "rank".
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string stage_;
    std::string kind_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& field, const std::string& what)
        : Error("parse error at '" + field + "': " + what), field_(field) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace shortspec
