#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace swlp {

/// Base class for failures raised while advancing the solution.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A water depth (or specific volume) left the admissible set h > 0.
class PositivityError : public SolverError {
public:
    PositivityError(const std::string& what, std::size_t cell)
        : SolverError(what), cell_(cell) {}
    std::size_t cell() const noexcept { return cell_; }

private:
    std::size_t cell_;
};

/// A time-step restriction (acoustic L_j > 0 or transport CFL) is violated.
class CflError : public SolverError {
public:
    CflError(const std::string& what, std::size_t cell)
        : SolverError(what), cell_(cell) {}
    std::size_t cell() const noexcept { return cell_; }

private:
    std::size_t cell_;
};

/// Non-finite values or an exhausted retry budget.
class StepFailure : public SolverError {
public:
    using SolverError::SolverError;
};

/// Invalid user or scenario configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An audit was requested for data it cannot be evaluated on.
class AuditUnavailable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace swlp
