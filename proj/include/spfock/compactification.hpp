#pragma once

// The analytic compactification of Sp(n,R) into the symmetric unitary
// matrices S_2n ~ U(2n)/O(2n): the map itself, the U(n)xU(n) action, the
// generalized Cartan decomposition of points of S_2n, the det_12 function
// and the KAK / torus integration densities.

#include <spfock/symplectic.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <utility>
#include <vector>

namespace spfock {

// 2n x 2n complex matrix, symmetric and unitary.
struct SymmetricUnitary {
  int n = 0;
  ComplexMatrix entries;

  SymmetricUnitary(int n_, ComplexMatrix m, double tol = kGroupTol)
      : n(n_), entries(std::move(m)) {
    if (n <= 0 || entries.rows() != 2 * n || entries.cols() != 2 * n)
      throw validation_error("symmetric unitary must be 2n x 2n");
    if (max_abs(ComplexMatrix(entries - entries.transpose())) > tol)
      throw validation_error("matrix is not symmetric");
    if (!is_unitary(entries, tol))
      throw validation_error("matrix is not unitary");
  }
};

// s = diag(h1,h2) [[cos t, -i sin t],[-i sin t, cos t]] diag(h1^t, h2^t),
// thetas in [0, pi/2] with sin theta sorted descending.
struct GeneralizedCartanFactorization {
  int n = 0;
  ComplexMatrix h1, h2;
  RealVector thetas;
};

inline ComplexMatrix gc_torus_point(const RealVector& thetas) {
  const int n = static_cast<int>(thetas.size());
  ComplexMatrix t = ComplexMatrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    t(i, i) = t(n + i, n + i) = std::cos(thetas[i]);
    t(i, n + i) = t(n + i, i) = Complex(0, -std::sin(thetas[i]));
  }
  return t;
}

inline SymmetricUnitary gc_reassemble(const GeneralizedCartanFactorization& f,
                                      double tol = kGroupTol) {
  const int n = f.n;
  ComplexMatrix h = ComplexMatrix::Zero(2 * n, 2 * n);
  h.topLeftCorner(n, n) = f.h1;
  h.bottomRightCorner(n, n) = f.h2;
  return SymmetricUnitary(n, h * gc_torus_point(f.thetas) * h.transpose(), tol);
}

// H(k1 exp(H) k2): diag(conj k1, conj(k2)^t) T diag(k1^{-1}, conj k2) with
// torus block T = [[tanh L, -i sech L],[-i sech L, tanh L]].
inline SymmetricUnitary compactify(const CartanFactorization& f, double tol = kGroupTol) {
  const int n = f.n;
  if (!is_unitary(f.k1, tol) || !is_unitary(f.k2, tol))
    throw validation_error("compactify: factors are not unitary");
  for (int i = 0; i < n; ++i) {
    if (f.lambdas[i] < -tol || (i > 0 && f.lambdas[i] > f.lambdas[i - 1] + tol))
      throw validation_error("compactify: lambdas must be non-negative and sorted");
  }
  ComplexMatrix t = ComplexMatrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    t(i, i) = t(n + i, n + i) = std::tanh(f.lambdas[i]);
    t(i, n + i) = t(n + i, i) = Complex(0, -1.0) / std::cosh(f.lambdas[i]);
  }
  ComplexMatrix left = ComplexMatrix::Zero(2 * n, 2 * n);
  left.topLeftCorner(n, n) = f.k1.conjugate();
  left.bottomRightCorner(n, n) = f.k2.conjugate().transpose();
  ComplexMatrix right = ComplexMatrix::Zero(2 * n, 2 * n);
  right.topLeftCorner(n, n) = f.k1.adjoint();
  right.bottomRightCorner(n, n) = f.k2.conjugate();
  return SymmetricUnitary(n, left * t * right, tol);
}

inline SymmetricUnitary compactify(const SymplecticElement& g, double tol = kGroupTol) {
  return compactify(kak_decompose(g, tol), tol);
}

// tau(k1,k2) s = diag(k1,k2) s diag(k1^t, k2^t).
inline SymmetricUnitary tau_action(const ComplexMatrix& k1, const ComplexMatrix& k2,
                                   const SymmetricUnitary& s, double tol = kGroupTol) {
  if (!is_unitary(k1, tol) || !is_unitary(k2, tol))
    throw validation_error("tau_action: factors are not unitary");
  const int n = s.n;
  ComplexMatrix h = ComplexMatrix::Zero(2 * n, 2 * n);
  h.topLeftCorner(n, n) = k1;
  h.bottomRightCorner(n, n) = k2;
  return SymmetricUnitary(n, h * s.entries * h.transpose(), tol);
}

namespace detail {

// Principal square root of a (numerically) symmetric matrix; any W with
// W W^t = S.  Functions of a symmetric matrix stay symmetric, so the
// principal root works: W W^t = W W = S.
inline ComplexMatrix symmetric_sqrt(const ComplexMatrix& s) {
  ComplexMatrix sym = 0.5 * (s + s.transpose());
  if (sym.rows() == 1) {
    ComplexMatrix r(1, 1);
    r(0, 0) = std::sqrt(sym(0, 0));
    return r;
  }
  return sym.sqrt();
}

}  // namespace detail

// Inverse of the generalized Cartan parametrization on S_2n.  The SVD of
// s12 = h1 (-i sin t) h2^t fixes sin t and h1, h2 up to block rotations on
// degenerate singular subspaces; those are resolved against s11 (and
// against s22 for the theta ~ 0 columns that s12 cannot see).
inline GeneralizedCartanFactorization gc_decompose(const SymmetricUnitary& s,
                                                   double tol = kGroupTol) {
  const int n = s.n;
  const ComplexMatrix s11 = s.entries.topLeftCorner(n, n);
  const ComplexMatrix s12 = s.entries.topRightCorner(n, n);
  const ComplexMatrix s22 = s.entries.bottomRightCorner(n, n);

  Eigen::JacobiSVD<ComplexMatrix> svd(s12, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const ComplexMatrix u = svd.matrixU();
  const ComplexMatrix z = Complex(0, 1) * svd.matrixV().conjugate();

  RealVector sines(n), cosines(n), thetas(n);
  for (int i = 0; i < n; ++i) {
    const double sv = std::min(1.0, std::max(0.0, svd.singularValues()[i]));
    sines[i] = sv;
    cosines[i] = std::sqrt(std::max(0.0, 1.0 - sv * sv));
    thetas[i] = std::asin(sv);
  }

  // Group indices with equal sin theta; within a group the SVD basis is
  // only determined up to a unitary block.
  const double group_tol = 1e-10;
  std::vector<std::pair<int, int>> blocks;
  for (int b = 0; b < n;) {
    int e = b + 1;
    while (e < n && sines[b] - sines[e] <= group_tol) ++e;
    blocks.emplace_back(b, e);
    b = e;
  }

  const ComplexMatrix m1 = u.adjoint() * s11 * u.conjugate();
  const ComplexMatrix m2 = z.adjoint() * s22 * z.conjugate();

  ComplexMatrix g1 = ComplexMatrix::Identity(n, n);  // h1 = U g1
  ComplexMatrix g2 = ComplexMatrix::Identity(n, n);  // h2 = Z g2
  const double cos_eps = 1e-13, sin_eps = 1e-8;
  for (auto [b, e] : blocks) {
    const int w = e - b;
    if (cosines[b] > cos_eps) {
      g1.block(b, b, w, w) =
          detail::symmetric_sqrt(m1.block(b, b, w, w) / cosines[b]);
    }
    if (sines[b] > sin_eps) {
      // s12 couples the factors: h2 = Z conj(g1) on this block.
      g2.block(b, b, w, w) = g1.block(b, b, w, w).conjugate();
    } else {
      g2.block(b, b, w, w) =
          detail::symmetric_sqrt(m2.block(b, b, w, w) / cosines[b]);
    }
  }

  GeneralizedCartanFactorization f;
  f.n = n;
  f.h1 = u * g1;
  f.h2 = z * g2;
  f.thetas = thetas;

  const double residual = max_abs(ComplexMatrix(gc_reassemble(f, 1e-6).entries - s.entries));
  if (residual > tol)
    throw decomposition_error("gc_decompose: reassembly residual " +
                              std::to_string(residual) + " exceeds tolerance");
  return f;
}

// det of the upper-right n x n block.
inline Complex det12(const SymmetricUnitary& s) {
  return s.entries.topRightCorner(s.n, s.n).determinant();
}

// KAK integration density of Sp(n,R):
// |prod_{i>j} sinh(l_i - l_j) sinh(l_i + l_j) * prod_i sinh(2 l_i)|.
inline double sp_density(const RealVector& lambdas) {
  const int n = static_cast<int>(lambdas.size());
  double d = 1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j)
      d *= std::sinh(lambdas[i] - lambdas[j]) * std::sinh(lambdas[i] + lambdas[j]);
    d *= std::sinh(2.0 * lambdas[i]);
  }
  return std::abs(d);
}

// Invariant density on S_2n in generalized Cartan coordinates, with the
// symbolic constant set to 1:
// |prod_{i>j} (cos 2t_i - cos 2t_j)| * |prod_i cos t_i|.
inline double s2n_density(const RealVector& thetas) {
  const int n = static_cast<int>(thetas.size());
  double d = 1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j)
      d *= std::cos(2.0 * thetas[i]) - std::cos(2.0 * thetas[j]);
    d *= std::cos(thetas[i]);
  }
  return std::abs(d);
}

// Jacobian of the generalized Cartan decomposition of U(2n) itself:
// |prod_{i>j} (cos 4t_i - cos 4t_j)| * |prod_i cos 2t_i|.
inline double jacobian_u2n_density(const RealVector& thetas) {
  const int n = static_cast<int>(thetas.size());
  double d = 1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j)
      d *= std::cos(4.0 * thetas[i]) - std::cos(4.0 * thetas[j]);
    d *= std::cos(2.0 * thetas[i]);
  }
  return std::abs(d);
}

// (prod_i sech lambda_i)^power.
inline double sech_weight(const RealVector& lambdas, int power) {
  if (power < 0) throw validation_error("sech_weight: power must be >= 0");
  double p = 1.0;
  for (int i = 0; i < lambdas.size(); ++i) p /= std::cosh(lambdas[i]);
  return std::pow(p, power);
}

// Push-forward of (conj(Lambda)/Lambda)^q to the compactification, q even:
// (det s^{-1})^{q/2}, single-valued because q/2 is an integer.
inline Complex ratio_pushforward(int q, const SymmetricUnitary& s) {
  if (q % 2 != 0) throw validation_error("ratio_pushforward: q must be even");
  const Complex base = (q >= 0) ? Complex(1.0) / s.entries.determinant()
                                : s.entries.determinant();
  Complex r = 1.0;
  for (int i = 0; i < std::abs(q) / 2; ++i) r *= base;
  return r;
}

}  // namespace spfock
