#pragma once

#include <stdexcept>
#include <string>

namespace adtrw {

// Precondition or input validation failure. The message names the offending
// parameter.
class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

// A computation was asked to run outside the range where the implementation
// is numerically trustworthy (alternating series, closed forms with
// cancellation, ...). Callers are expected to pick another route.
class EnvelopeError : public std::runtime_error {
 public:
  explicit EnvelopeError(const std::string& what) : std::runtime_error(what) {}
};

// Something that should be impossible for valid input went wrong numerically
// (an asserted inequality failed, a root bracket collapsed).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

[[noreturn]] void throw_invalid(const std::string& what);

}  // namespace adtrw
