#ifndef TREEFLIP_ERROR_HPP_
#define TREEFLIP_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace treeflip {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad edge sets, bad JSON, out-of-range indices.
class InputError : public Error {
public:
    using Error::Error;
};

/// A caller violated a documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An internal invariant failed. On valid input this indicates a bug.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

/// A flip that does not produce a non-crossing spanning tree.
class InvalidFlip : public Error {
public:
    using Error::Error;
};

/// A constructed flip sequence exceeded its proven length bound.
class BoundViolation : public Error {
public:
    using Error::Error;
};

/// A resource budget (node limit, point limit) was exceeded.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// An inequality that no integer satisfies.
class Unsatisfiable : public Error {
public:
    using Error::Error;
};

} // namespace treeflip

#endif
