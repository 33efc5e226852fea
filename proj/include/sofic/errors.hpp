#pragma once

#include <stdexcept>
#include <string>

namespace sofic {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller passed a value outside an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A configured cap (ball size, matrix rank, group order, prime ceiling) would be exceeded.
class ResourceLimitExceeded : public Error {
 public:
  using Error::Error;
};

// Structurally invalid data: non-bijective permutation, non-unitary matrix,
// non-group table, bad certificate or graph document.
class MalformedInput : public Error {
 public:
  using Error::Error;
};

}  // namespace sofic
