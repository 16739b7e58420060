#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace galembed {

// Bad configuration values: non-prime p, unsupported q, out-of-range i or j.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed data handed to an operation (dimension mismatch, unstable span, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation's mathematical precondition does not hold.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A class refers to atoms outside the support space it is being read in.
class SupportExceeded : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class SizeCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace galembed
