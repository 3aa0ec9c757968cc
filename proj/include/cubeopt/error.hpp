#pragma once

#include <stdexcept>
#include <string>

namespace cubeopt {

/// Malformed input: bad JSON, wrong dimensions, disconnected complexes.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point that was required to lie in the complex (or in a given cell) does not.
class MembershipError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation that cannot proceed on this input (no core, too many cells, ...).
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The intersection of balls is empty where a nonempty one was required.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cubeopt
