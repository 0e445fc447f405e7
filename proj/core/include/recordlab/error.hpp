#pragma once

#include <stdexcept>
#include <string>

namespace recordlab {

/// Invalid arguments: bad dimension, pole of a special function, divergent
/// parameter set, unknown enumerator.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical procedure failed to reach its requested accuracy. The message
/// carries the achieved bound.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what, double achieved = 0.0)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

}  // namespace recordlab
