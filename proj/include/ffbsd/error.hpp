#pragma once

#include <stdexcept>
#include <string>

namespace ffbsd {

// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside the supported class: residue characteristic < 5, constant
// curves, conductor degree < 4.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent user input (bad files, points off the curve,
// dependent generators).
class InputError : public Error {
 public:
  using Error::Error;
};

// Two independent computations disagreed. Always a bug or a corrupted cache.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// Canonical height doubling did not settle within the configured cap.
class HeightError : public Error {
 public:
  using Error::Error;
};

// Division by zero in a field or polynomial ring.
class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
  explicit DivisionByZero(const std::string& what) : Error("division by zero: " + what) {}
};

}  // namespace ffbsd
