#pragma once

#include <stdexcept>
#include <string>

namespace mtgl {

/// Argument outside the domain an operation is defined on (e.g. A <= 8, p < 1).
class invalid_parameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Shapes of a dataset and a coefficient array (or of task files) disagree.
class dimension_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A design fails a structural requirement (all-zero, non-unit diagonal, ...).
class diagnostic_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file; the message names the file, row and column.
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inconsistent experiment or CLI configuration.
class config_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine broke its own contract (e.g. objective increased).
class internal_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mtgl
