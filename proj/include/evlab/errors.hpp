#pragma once

#include <stdexcept>
#include <string>

namespace evlab {

// Base class for everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument sits on (or within abs_tol of) a pole of the function.
class PoleError : public Error {
 public:
  using Error::Error;
};

// Argument outside the region where the requested method is valid.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent Maass-form data.
class DataError : public Error {
 public:
  using Error::Error;
};

// A computation needs Hecke eigenvalues beyond what the form carries.
class InsufficientCoefficients : public Error {
 public:
  InsufficientCoefficients(const std::string& what, long long required_pmax)
      : Error(what), required_pmax_(required_pmax) {}
  long long required_pmax() const noexcept { return required_pmax_; }

 private:
  long long required_pmax_;
};

// Quadrature or grid refinement did not reach its tolerance within budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Invalid run configuration (bad flag value, wrong number of forms, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace evlab
