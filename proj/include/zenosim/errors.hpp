#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace zenosim {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Precondition / dimension-contract violations.
class ContractError : public Error {
public:
    using Error::Error;
};

// Invalid argument domain (e.g. theta = pi coherent state, tau = 0 rate).
class DomainError : public Error {
public:
    using Error::Error;
};

// Parameter combination hits a pole or degenerate expansion.
class SingularParameterError : public Error {
public:
    using Error::Error;
};

// Quadrature or series failed to reach the requested accuracy.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& msg, double achieved)
        : Error(msg), achieved_estimate(achieved) {}
    double achieved_estimate;
};

// Hierarchy layout would exceed the configured memory budget.
class CapacityError : public Error {
public:
    using Error::Error;
};

// Integrator step size violates the stability guard.
class StepSizeError : public Error {
public:
    StepSizeError(const std::string& msg, double suggested)
        : Error(msg), suggested_dt(suggested) {}
    double suggested_dt;
};

// Non-finite values appeared during integration.
class DivergenceError : public Error {
public:
    using Error::Error;
};

// Depth (or other) iteration exhausted its budget before converging.
class NonConvergenceError : public Error {
public:
    NonConvergenceError(const std::string& msg, double last_delta)
        : Error(msg), last_delta(last_delta) {}
    double last_delta;
};

// A state failed a structural check (trace drift, hermiticity, positivity).
class IntegrityError : public Error {
public:
    using Error::Error;
};

// Fitted short-time slope is not positive: no quadratic Zeno regime.
class NoZenoRegimeError : public Error {
public:
    using Error::Error;
};

// Configuration file rejected; carries every violation found.
class ConfigError : public Error {
public:
    ConfigError(const std::string& msg, std::vector<std::string> violations_)
        : Error(msg), violations(std::move(violations_)) {}
    std::vector<std::string> violations;
};

} // namespace zenosim
