#pragma once

#include <stdexcept>
#include <string>

namespace urnlab {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid user-supplied input (rule out of range, malformed fraction, ...).
class ValidationError : public Error {
public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

// Root isolation was asked to isolate the roots of the zero polynomial.
class ZeroPolynomialError : public Error {
public:
  explicit ZeroPolynomialError(const std::string& what) : Error(what) {}
};

}  // namespace urnlab
