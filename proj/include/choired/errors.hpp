#pragma once

#include <stdexcept>
#include <string>

namespace choired {

/// Malformed or inconsistent input (bad curve record, non-squarefree
/// argument, bad range). The CLI maps it to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A hypothesis of the density or prime-scan theorems is violated
/// (k >= r, p <= 3, mode/reduction mismatch). The CLI maps it to exit code 3.
class HypothesisError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace choired
