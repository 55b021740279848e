#pragma once

#include <stdexcept>
#include <string>

namespace spltest {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed model input (DIMACS, native or tree format). Carries the 1-based
// line number where the problem was detected, or 0 when no line applies.
class ParseError : public Error {
public:
    ParseError(int line, const std::string& message)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + message
                         : message),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

// The feature model has no satisfying assignment.
class InconsistentModelError : public Error {
public:
    using Error::Error;
};

// A product suite does not belong to the model it is used with.
class SuiteMismatchError : public Error {
public:
    using Error::Error;
};

// An exact enumeration would exceed the configured budget; callers should
// switch to the sampled estimators.
class EnumerationBudgetError : public Error {
public:
    using Error::Error;
};

// Rejection sampling could not collect enough valid t-sets; the validity
// rate of the model is too low for the sampled mode.
class SamplingStallError : public Error {
public:
    using Error::Error;
};

} // namespace spltest
