#pragma once

#include <stdexcept>
#include <string>

namespace shp {

// Bad argument to a library call (out-of-range index, odd length, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation applied to an object in the wrong state (e.g. scaling twice).
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A transform was asked to map a value outside its domain.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exact search would exceed its node budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace shp
