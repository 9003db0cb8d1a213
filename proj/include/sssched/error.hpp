#pragma once

#include <stdexcept>
#include <string>

namespace sssched {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a formula (e.g. non-positive duration).
class DomainError : public Error {
  public:
    using Error::Error;
};

// Dangling or missing references between instance, plan and schedule.
class StructuralError : public Error {
  public:
    using Error::Error;
};

// Input rejected before any algorithm runs (malformed instance, violated preconditions).
class InputError : public Error {
  public:
    using Error::Error;
};

// Instance shape not handled by the requested algorithm.
class VariantError : public Error {
  public:
    using Error::Error;
};

// A postcondition that the algorithms guarantee did not hold. Always a bug.
class InternalInvariantError : public Error {
  public:
    using Error::Error;
};

// Brute-force oracle refused an instance that exceeds its enumeration limits.
class GuardError : public Error {
  public:
    using Error::Error;
};

// No feasible assignment exists (oracle grid too coarse for the windows).
class InfeasibleError : public Error {
  public:
    using Error::Error;
};

}  // namespace sssched
