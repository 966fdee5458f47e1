#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qlp {

using Scalar = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Numerical thresholds shared by the library.
///
/// `algebraic` bounds residuals of identities that hold exactly in exact
/// arithmetic (homomorphism checks, unitality, trace preservation).
/// `spectral` bounds comparisons that go through an eigen- or singular-value
/// computation (orthogonality relations, spectral gaps, Plancherel).
struct Tolerances {
  double algebraic = 1e-10;
  double spectral = 1e-8;
};

/// Defaults, overridable through the QLP_TOL environment variable
/// (sets both fields to the given value).
Tolerances default_tolerances();

/// An argument lies outside the domain of the operation (e.g. p < 1).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Block layouts or dimensions do not match.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input data violates a structural axiom (group table, *-homomorphism, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two computations that must agree did not; signals a numerical problem or
/// an implementation bug rather than bad input.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qlp
