#pragma once

// Real symplectic matrices Sp(n,R), the embedded maximal compact U(n),
// KAK decomposition, the complex Cayley block and its metaplectic square
// roots.
//
// Conventions: J = [[0, I],[-I, 0]]; a unitary k embeds as
// [[Re k, Im k],[-Im k, Re k]], the convention under which multiplication
// by i on C^n acts as J on R^{2n}.

#include <spfock/types.hpp>

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace spfock {

inline RealMatrix symplectic_j(int n) {
  RealMatrix j = RealMatrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = RealMatrix::Identity(n, n);
  j.bottomLeftCorner(n, n) = -RealMatrix::Identity(n, n);
  return j;
}

// 2n x 2n real matrix with g^t J g = J.  Residuals are measured relative
// to max(1, |g|_max^2); for entries of size e^lambda the raw residual of an
// exactly symplectic matrix already carries roundoff of that order.
struct SymplecticElement {
  int n = 0;
  RealMatrix entries;

  SymplecticElement(int n_, RealMatrix m, double tol = kGroupTol)
      : n(n_), entries(std::move(m)) {
    if (n <= 0 || entries.rows() != 2 * n || entries.cols() != 2 * n)
      throw validation_error("symplectic element must be 2n x 2n");
    const double scale = std::max(1.0, max_abs(entries) * max_abs(entries));
    const RealMatrix j = symplectic_j(n);
    if (max_abs(entries.transpose() * j * entries - j) > tol * scale)
      throw validation_error("matrix does not satisfy g^t J g = J");
    if (std::abs(entries.determinant() - 1.0) > tol * scale)
      throw validation_error("symplectic matrix must have determinant 1");
  }

  SymplecticElement operator*(const SymplecticElement& rhs) const {
    if (n != rhs.n) throw validation_error("symplectic product: size mismatch");
    return SymplecticElement(n, entries * rhs.entries);
  }

  static SymplecticElement identity(int n) {
    return SymplecticElement(n, RealMatrix::Identity(2 * n, 2 * n));
  }
};

// k unitary -> [[Re k, Im k],[-Im k, Re k]], symplectic and orthogonal.
inline SymplecticElement embed_unitary(const ComplexMatrix& k, double tol = kGroupTol) {
  if (!is_unitary(k, tol)) throw validation_error("embed_unitary: input is not unitary");
  const int n = static_cast<int>(k.rows());
  RealMatrix m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = k.real();
  m.topRightCorner(n, n) = k.imag();
  m.bottomLeftCorner(n, n) = -k.imag();
  m.bottomRightCorner(n, n) = k.real();
  return SymplecticElement(n, std::move(m), tol);
}

// Inverse of embed_unitary on matrices of the block form [[A, B],[-B, A]].
inline ComplexMatrix unembed_unitary(const RealMatrix& m) {
  const int n = static_cast<int>(m.rows()) / 2;
  return m.topLeftCorner(n, n) + Complex(0, 1) * m.topRightCorner(n, n);
}

// g = embed(k1) exp(diag(lambda, -lambda)) embed(k2), lambda sorted
// descending and non-negative.  k1, k2 are not canonical under degenerate
// spectra; only the reassembly residual is contractual.
struct CartanFactorization {
  int n = 0;
  ComplexMatrix k1, k2;
  RealVector lambdas;
};

inline SymplecticElement reassemble(const CartanFactorization& f, double tol = kGroupTol) {
  RealVector d(2 * f.n);
  for (int i = 0; i < f.n; ++i) {
    d[i] = std::exp(f.lambdas[i]);
    d[f.n + i] = std::exp(-f.lambdas[i]);
  }
  RealMatrix m = embed_unitary(f.k1, tol).entries * d.asDiagonal() *
                 embed_unitary(f.k2, tol).entries;
  return SymplecticElement(f.n, std::move(m), tol);
}

namespace detail {

// Extracts `want` orthonormal vectors from the sigma ~ 1 singular subspace
// such that span{v_i} is J-isotropic; the numeric SVD may mix the J-paired
// directions there.
inline std::vector<RealVector> isotropic_half_basis(const RealMatrix& basis,
                                                    const RealMatrix& j, int want) {
  std::vector<RealVector> chosen;
  for (int c = 0; c < basis.cols() && static_cast<int>(chosen.size()) < want; ++c) {
    RealVector v = basis.col(c);
    for (const RealVector& w : chosen) {
      RealVector jw = j * w;
      v -= w * w.dot(v) + jw * jw.dot(v);
    }
    if (v.norm() > 0.25) chosen.push_back(v.normalized());
  }
  return chosen;
}

}  // namespace detail

// KAK decomposition through the SVD of g.  The top-half singular triplets
// (sigma >= 1) determine everything: for symplectic g, g(-Jv) =
// sigma^{-1}(-Ju) whenever gv = sigma u, so the contracting half is
// reconstructed exactly through J instead of read from the (relatively
// inaccurate) small singular values.
inline CartanFactorization kak_decompose(const SymplecticElement& g, double tol = kGroupTol) {
  const int n = g.n;
  const RealMatrix j = symplectic_j(n);
  Eigen::JacobiSVD<RealMatrix> svd(g.entries, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& sigma = svd.singularValues();  // sorted descending

  // Singular values with |log sigma| <= cluster_tol form a J-invariant
  // subspace whose numeric basis needs an isotropy fix.
  const double cluster_tol = 1e-10;
  std::vector<int> plain, cluster;
  for (int i = 0; i < 2 * n; ++i) {
    const double lv = std::log(sigma[i]);
    if (std::abs(lv) <= cluster_tol)
      cluster.push_back(i);
    else if (lv > 0.0)
      plain.push_back(i);
  }

  RealMatrix v_half(2 * n, n), u_half(2 * n, n);
  RealVector lambdas(n);
  int filled = 0;
  for (int idx : plain) {
    if (filled >= n) break;
    v_half.col(filled) = svd.matrixV().col(idx);
    u_half.col(filled) = svd.matrixU().col(idx);
    lambdas[filled] = std::log(sigma[idx]);
    ++filled;
  }
  if (!cluster.empty() && filled < n) {
    RealMatrix sub(2 * n, static_cast<int>(cluster.size()));
    for (int c = 0; c < static_cast<int>(cluster.size()); ++c)
      sub.col(c) = svd.matrixV().col(cluster[c]);
    for (const RealVector& v : detail::isotropic_half_basis(sub, j, n - filled)) {
      RealVector gv = g.entries * v;
      const double s = gv.norm();
      v_half.col(filled) = v;
      u_half.col(filled) = gv / s;
      lambdas[filled] = std::log(s);
      ++filled;
    }
  }
  if (filled != n)
    throw decomposition_error("kak_decompose: singular spectrum is not symplectic-paired");

  // Sort descending by lambda (cluster entries may land out of order).
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return lambdas[a] > lambdas[b]; });

  RealMatrix u_full(2 * n, 2 * n), v_full(2 * n, 2 * n);
  RealVector lam(n);
  for (int i = 0; i < n; ++i) {
    lam[i] = std::max(lambdas[order[i]], 0.0);
    u_full.col(i) = u_half.col(order[i]);
    v_full.col(i) = v_half.col(order[i]);
    u_full.col(n + i) = -j * u_half.col(order[i]);
    v_full.col(n + i) = -j * v_half.col(order[i]);
  }

  CartanFactorization f;
  f.n = n;
  f.k1 = unembed_unitary(u_full);
  f.k2 = unembed_unitary(v_full.transpose());
  f.lambdas = lam;

  const double residual = max_abs(reassemble(f, 1e-6).entries - g.entries);
  if (residual > tol * std::max(1.0, max_abs(g.entries)))
    throw decomposition_error("kak_decompose: reassembly residual " +
                              std::to_string(residual) + " exceeds tolerance");
  return f;
}

// C_g = (g - JgJ)/2; complexified block C_g^C = (A+D)/2 + i(B-C)/2,
// invertible for every symplectic g.
inline ComplexMatrix cayley_block(const SymplecticElement& g) {
  const int n = g.n;
  const RealMatrix& m = g.entries;
  return 0.5 * (m.topLeftCorner(n, n) + m.bottomRightCorner(n, n)) +
         Complex(0, 0.5) * (m.topRightCorner(n, n) - m.bottomLeftCorner(n, n));
}

// det(C_g^C)^{-1}; its modulus equals prod_i sech lambda_i(g).
inline Complex lambda_squared(const SymplecticElement& g) {
  return 1.0 / cayley_block(g).determinant();
}

// A point (lambda, g) of the metaplectic double cover,
// lambda^2 det(C_g^C) = 1.
struct MetaplecticElement {
  Complex lambda;
  SymplecticElement g;

  MetaplecticElement(Complex lam, SymplecticElement elem, double tol = kGroupTol)
      : lambda(lam), g(std::move(elem)) {
    if (std::abs(lambda * lambda * cayley_block(g).determinant() - 1.0) > tol)
      throw validation_error("metaplectic element: lambda^2 det(C_g) != 1");
  }
};

// Both lifts of g; the principal branch (argument in (-pi/2, pi/2]) first.
inline std::pair<MetaplecticElement, MetaplecticElement> metaplectic_lifts(
    const SymplecticElement& g) {
  const Complex lam = std::sqrt(lambda_squared(g));
  return {MetaplecticElement(lam, g), MetaplecticElement(-lam, g)};
}

}  // namespace spfock
