#pragma once

#include <stdexcept>
#include <string>

namespace bonus {

/// Match configuration violates the admissible bonus set (parity or range).
class InvalidConfigError : public std::invalid_argument {
 public:
  explicit InvalidConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// A root finder was asked to solve on an interval whose endpoints do not
/// straddle zero.
class BracketFailureError : public std::runtime_error {
 public:
  explicit BracketFailureError(const std::string& what) : std::runtime_error(what) {}
};

/// An otherwise valid input produces a degenerate quantity (e.g. a zero
/// denominator in a ratio of expected surprises).
class DegenerateInputError : public std::domain_error {
 public:
  explicit DegenerateInputError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace bonus
