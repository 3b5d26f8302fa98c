#pragma once

#include <stdexcept>
#include <string>

namespace quasiwide {

// Malformed caller input: out-of-range ids, bad arity, duplicate elements.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A documented precondition that is checked at runtime does not hold.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The requested object does not exist (e.g. terminals in distinct components).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A self-check failed; indicates a bug, never bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace quasiwide
