#pragma once

#include <stdexcept>
#include <string>

namespace qradar {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad input: malformed state, out-of-range parameter, unknown config key.
class ValidationError : public Error {
public:
    using Error::Error;
};

// The numbers themselves failed: instability, non-convergence, threshold.
class NumericalError : public Error {
public:
    using Error::Error;
};

class InstabilityError : public NumericalError {
public:
    InstabilityError(const std::string& what, double max_real_part)
        : NumericalError(what), max_real_part_(max_real_part) {}
    double max_real_part() const { return max_real_part_; }

private:
    double max_real_part_;
};

}  // namespace qradar
