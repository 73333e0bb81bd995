#pragma once

#include <stdexcept>
#include <string>

namespace intrisk {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// Structurally invalid values: dimension mismatches, broken invariants,
/// non-finite entries, sets that fail non-triviality.
class StructuralError : public Error {
public:
    using Error::Error;
};

/// Scalar parameter outside its admissible range (alpha, lambda, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Operation invoked on inputs that violate its documented preconditions,
/// e.g. missing structural flags or an unacceptable eligible asset.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Problem size exceeds what an exact enumeration supports.
class SizeError : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent input file contents.
class InputError : public Error {
public:
    using Error::Error;
};

}  // namespace intrisk
