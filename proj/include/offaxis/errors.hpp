#pragma once

#include <stdexcept>
#include <string>

namespace offaxis {

/// Parameter or configuration violates a documented invariant.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Fields defined on different grids were combined.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The probe superposition transform has no normalizer (all pumps off).
class SingularTransformError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Matching condition cannot be evaluated because a denominator beam vanishes.
class IndeterminateConditionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Stationary atomic system is singular at the requested parameters.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, double rcond)
        : std::runtime_error(what), rcond_(rcond) {}
    double rcond() const noexcept { return rcond_; }

private:
    double rcond_;
};

/// Requested prediction is not defined for this beam configuration.
class UnsupportedConfigurationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Filesystem failure while emitting run outputs.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace offaxis
