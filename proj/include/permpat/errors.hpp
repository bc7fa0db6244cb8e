#pragma once

#include <stdexcept>
#include <string>

namespace permpat {

// Malformed user input: bad permutation text, out-of-range parameters, etc.
class InvalidInputError : public std::runtime_error {
public:
    explicit InvalidInputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Request exceeds an enumeration cap or another size guard.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

// A validated mathematical precondition does not hold (non-monotone function,
// measure that is not log-supermodular, cover multiplicity too low, ...).
class PreconditionError : public std::runtime_error {
public:
    explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace permpat
