#pragma once

#include <stdexcept>
#include <string>

namespace fsl {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: wrong lengths, out-of-range indices, empty sequences.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Operation needs a finite group but an infinite cyclic factor is present.
class InfiniteGroupError : public Error {
 public:
  using Error::Error;
};

class NotASubgroupError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of the operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class LimitExceededError : public Error {
 public:
  using Error::Error;
};

/// An internal cross-check failed. Seeing this means a bug, not bad input.
class VerificationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace fsl
