#pragma once

#include <stdexcept>
#include <string>

namespace pimsim {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller passed something outside an operation's precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A state or component does not fit the configured memory.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// An internal invariant broke at runtime: integer overflow, a worker touching
/// another worker's memory, a state the exact engine cannot represent.
class ContractViolation : public Error {
public:
    using Error::Error;
};

class OverflowError : public ContractViolation {
public:
    using ContractViolation::ContractViolation;
};

}  // namespace pimsim
