#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace zeta {

/// Rejected caller input: bad ranges, malformed numbers, invalid traces.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation produced a value that contradicts the theory it implements
/// (a non-integral L-coefficient, a nonzero sqrt(2) part, two methods
/// disagreeing). `state()` carries a JSON dump of the offending inputs and
/// intermediate values.
class ConsistencyError : public std::runtime_error {
 public:
  ConsistencyError(const std::string& what, std::string state)
      : std::runtime_error(what), state_(std::move(state)) {}

  const std::string& state() const noexcept { return state_; }

 private:
  std::string state_;
};

}  // namespace zeta
