#pragma once

#include <stdexcept>
#include <string>

namespace confmac {

// Argument outside the mathematical domain of an operation (negative SNR, split out of range).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Caller misuse: overlapping axes, empty grid, dimension mismatch, bad flag.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Malformed data: pmf that does not sum to one, negative entry, bad config value.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A documented precondition on the input object does not hold.
struct PreconditionError : std::logic_error {
  using std::logic_error::logic_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace confmac
