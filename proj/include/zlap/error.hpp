#pragma once

#include <stdexcept>
#include <string>

namespace zlap {

// Invalid inputs: bad indices, violated preconditions, malformed files.
// Maps to CLI exit code 1.
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failures: iteration caps hit, non-convergence.
// Maps to CLI exit code 2.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace zlap
