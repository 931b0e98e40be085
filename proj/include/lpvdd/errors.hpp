#pragma once

#include <stdexcept>
#include <string>

namespace lpvdd {

/// A supplied window does not satisfy the model/data relations to tolerance.
class InconsistentWindowError : public std::runtime_error {
public:
    InconsistentWindowError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

/// Equality constraints of an optimization problem cannot be met.
class InfeasibleProblemError : public std::runtime_error {
public:
    InfeasibleProblemError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

}  // namespace lpvdd
