#pragma once

#include <stdexcept>
#include <string>

namespace tcc {

// Problems with input data: unreadable or malformed files, empty datasets,
// inconsistent feature dimensions. CLI exit code 3.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failures: singular prior, diverged training, counts that are
// inconsistent with the generation model. CLI exit code 4.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tcc
