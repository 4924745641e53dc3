#pragma once

#include <stdexcept>
#include <string>

namespace fraclab {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Evaluation at a pole of Gamma (x = 0, -1, -2, ...).
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NonConvergenceError : public std::runtime_error {
public:
    explicit NonConvergenceError(const std::string& what, int step = -1)
        : std::runtime_error(what), step_(step) {}
    int step() const noexcept { return step_; }

private:
    int step_;
};

class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fraclab
