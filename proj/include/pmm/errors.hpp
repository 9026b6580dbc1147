#pragma once

#include <stdexcept>
#include <string>

namespace pmm {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Missing or inconsistent smoothness constants / solver settings.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

// NaN/Inf, failed factorization, or a violated strong-convexity assumption.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class Infeasible : public Error {
 public:
  using Error::Error;
};

class SizeLimit : public Error {
 public:
  using Error::Error;
};

}  // namespace pmm
