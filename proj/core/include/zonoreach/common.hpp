#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace zonoreach {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched operand dimensions (e.g. Minkowski sum of a 2D and a 3D set).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Invalid argument value (non-finite input, rho < 1, bad label, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine failed to converge or produced a non-finite result.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A feasibility problem has no solution (empty constrained zonotope,
/// point outside the set, inconsistent equality constraints).
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// A configured resource budget was exceeded (volume subset cap,
/// constraint-row cap, iteration cap on a user-supplied problem).
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Exit codes used by the command-line driver.
enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitNumerical = 3,
  kExitBudget = 4,
};

/// Throws DimensionError with a formatted message unless cond holds.
inline void require_dims(bool cond, const std::string& msg) {
  if (!cond) throw DimensionError(msg);
}

/// Throws ParameterError unless cond holds.
inline void require_param(bool cond, const std::string& msg) {
  if (!cond) throw ParameterError(msg);
}

/// True iff every entry of M is finite.
inline bool is_finite(const Matrix& M) { return M.allFinite(); }

}  // namespace zonoreach
