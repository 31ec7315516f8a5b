#pragma once

#include <stdexcept>
#include <string>

namespace rifs {

/// Input that cannot form a valid map, system, or scene.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operation called outside its stated preconditions.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rifs
