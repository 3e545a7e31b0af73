#pragma once

#include <stdexcept>
#include <string>

namespace relkernel {

/// Argument outside the supported domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An iterative or adaptive procedure did not reach its tolerance.
/// Carries the best value obtained and the error actually achieved.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_estimate, double achieved_error)
        : std::runtime_error(what), best_estimate_(best_estimate), achieved_error_(achieved_error) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double achieved_error() const noexcept { return achieved_error_; }

private:
    double best_estimate_;
    double achieved_error_;
};

/// An integrand or callback produced a non-finite value.
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical linear algebra failure.
class LinearAlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace relkernel
