#pragma once

#include <stdexcept>
#include <string>

namespace pjam {

/// Malformed or out-of-domain input (singular basis, bad file, overlapping disks).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to produce a trustworthy answer.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact integer arithmetic left the int64 range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

}  // namespace pjam
