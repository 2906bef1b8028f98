#pragma once

#include <stdexcept>
#include <string>

namespace reflow {

/// Input or state failed a model invariant (bad instance file, malformed
/// sequence, infeasible interchange, ...).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A solver refused to run because a configured size guard would be exceeded.
class GuardExceeded : public std::runtime_error {
 public:
  explicit GuardExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace reflow
