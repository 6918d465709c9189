#pragma once

#include <stdexcept>
#include <string>

namespace bacf {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Raised when an inverse transform receives a spectrum that is not the
/// transform of a real signal.
class SymmetryError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace bacf
