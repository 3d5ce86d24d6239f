#pragma once

#include <stdexcept>
#include <string>

namespace gcsim {

/// Input rejected by a documented precondition or schema rule.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical procedure failed to reach its target accuracy.
/// Carries the error estimate that was actually achieved.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what, double achieved = 0.0)
        : std::runtime_error(what), achieved_error(achieved) {}

    double achieved_error;
};

}  // namespace gcsim
