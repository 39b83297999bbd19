#pragma once

#include <stdexcept>
#include <string>

namespace ruinlab {

/// Malformed or invariant-violating configuration input. CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// An asymptotic formula was requested outside its domain of validity
/// (net profit condition rho < 1 violated). CLI exit code 3.
class RefusalError : public std::runtime_error {
 public:
  explicit RefusalError(const std::string& what) : std::runtime_error(what) {}
};

/// A quantity left the representable floating-point regime (tail underflow,
/// cumulant overflow). Callers should switch to the asymptotic form.
class SaturationError : public std::runtime_error {
 public:
  explicit SaturationError(const std::string& what) : std::runtime_error(what) {}
};

/// A simulation or quadrature exceeded its hard work cap.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ruinlab
