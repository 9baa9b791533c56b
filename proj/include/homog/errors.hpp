#pragma once

#include <stdexcept>
#include <string>

namespace homog {

/// Bad input: out-of-range index, dimension mismatch, malformed config.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured size cap (grid cap, exact-engine qubit cap) would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A physical or bookkeeping invariant failed at run time.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace homog
