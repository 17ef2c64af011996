#pragma once

#include <stdexcept>
#include <string>

namespace smoothchar {

// A bound lies outside what an operation (or a constructed object) covers.
class RangeError : public std::out_of_range {
 public:
  explicit RangeError(const std::string& what) : std::out_of_range(what) {}
};

// A parameter violates a mathematical precondition of an operation.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what)
      : std::invalid_argument(what) {}
};

}  // namespace smoothchar
