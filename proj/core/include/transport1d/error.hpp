#pragma once

#include <stdexcept>
#include <string>

namespace transport1d {

// Bad input: grid extents, preconditions, malformed config.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical construction failed (residual too large, inconsistent potential, ...).
class NumericalFailure : public std::runtime_error {
public:
    NumericalFailure(const std::string& what, double value)
        : std::runtime_error(what), value_(value) {}

    // Offending quantity (residual, discrepancy, ...).
    double value() const noexcept { return value_; }

private:
    double value_;
};

}  // namespace transport1d
