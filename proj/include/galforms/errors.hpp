#pragma once

#include <stdexcept>
#include <string>

namespace galforms {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual or JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Arithmetic with no defined result, e.g. inverting zero.
class DomainError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A size guard or enumeration budget would be exceeded.
class BudgetExceeded : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Operands built over different towers were combined.
class ContextMismatch : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

}  // namespace galforms
