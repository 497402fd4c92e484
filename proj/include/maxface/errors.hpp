#pragma once

#include <stdexcept>
#include <string>

namespace maxface {

/// Evaluation outside the region where a function or solution is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Björling data that fails one of its defining conditions.
class InvalidDataError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Re of a loop integral does not vanish, so X is not single-valued.
class PeriodError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A representation the routine cannot handle (e.g. mixed trig/poly data).
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A file could not be written or parsed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace maxface
