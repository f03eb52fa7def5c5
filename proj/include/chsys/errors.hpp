#pragma once

#include <stdexcept>
#include <string>

namespace chsys {

/// Non-finite or otherwise unusable field data.
class InvalidField : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operands live on different grids, or a grid size is not allowed.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A parameter lies outside the range an operation supports.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace chsys
