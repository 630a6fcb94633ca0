#pragma once

#include <stdexcept>
#include <string>

namespace tropenum {

// Invalid argument to a mathematical operation (zero vector, unbalanced degree, ...).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operation called outside its contract (non-trivalent curve, etc).
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Point configuration turned out to be special; the caller should resample.
struct GenericityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A path meets the singular locus of a diagram or runs along a wall.
struct NonTransversePath : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An internal cross-check failed.
struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tropenum
