#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace spfock {

using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

// Default tolerance for group-membership and factorization residuals.
inline constexpr double kGroupTol = 1e-9;

// Thrown when an input fails a documented precondition (bad matrix,
// dimension mismatch, malformed file, ...).  CLI maps this to exit code 1.
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a factorization cannot be certified by its reassembly
// residual.  Never returned silently.
class decomposition_error : public std::runtime_error {
 public:
  explicit decomposition_error(const std::string& what) : std::runtime_error(what) {}
};

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

inline bool is_unitary(const ComplexMatrix& k, double tol = kGroupTol) {
  if (k.rows() != k.cols() || k.rows() == 0) return false;
  ComplexMatrix r = k.adjoint() * k - ComplexMatrix::Identity(k.rows(), k.cols());
  return max_abs(r) <= tol;
}

}  // namespace spfock
