#pragma once

#include <stdexcept>
#include <string>

namespace autobid {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rejected user data: non-positive values, malformed rationals or files.
class InputError : public Error {
 public:
  using Error::Error;
};

// An index (k, bidder, query) outside its admissible range.
class RangeError : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Something that the characterization proves impossible happened anyway.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// Subset enumeration requested beyond the configured cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Two +inf bids on the same query.
class IllFormedProfile : public Error {
 public:
  using Error::Error;
};

// Operation only defined for two bidders.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace autobid
