#pragma once

#include <stdexcept>
#include <string>

namespace mqc {

// Mismatched qubit counts or matrix shapes.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An index, order, or parameter outside its admissible range.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Problem too large for the requested storage mode.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Input violates a documented precondition (shape is fine, content is not).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File could not be opened, read, or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mqc
