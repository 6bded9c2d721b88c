#pragma once

// Gauss-Legendre and Gauss-Hermite rules via Golub-Welsch on the Jacobi
// matrix of the orthogonal polynomial family.

#include <spfock/types.hpp>

#include <cmath>
#include <map>
#include <vector>

namespace spfock {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail {

inline QuadratureRule golub_welsch(const RealVector& offdiag, double mass) {
  const int k = static_cast<int>(offdiag.size()) + 1;
  RealMatrix jacobi = RealMatrix::Zero(k, k);
  for (int i = 0; i + 1 < k; ++i) jacobi(i, i + 1) = jacobi(i + 1, i) = offdiag[i];
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(jacobi);
  QuadratureRule rule;
  rule.nodes.resize(k);
  rule.weights.resize(k);
  for (int i = 0; i < k; ++i) {
    rule.nodes[i] = es.eigenvalues()[i];
    const double v = es.eigenvectors()(0, i);
    rule.weights[i] = mass * v * v;
  }
  return rule;
}

}  // namespace detail

// Weight exp(-x^2) on (-inf, inf).
inline const QuadratureRule& gauss_hermite(int k) {
  static std::map<int, QuadratureRule> cache;
  auto it = cache.find(k);
  if (it == cache.end()) {
    RealVector off(k - 1);
    for (int i = 1; i < k; ++i) off[i - 1] = std::sqrt(0.5 * i);
    it = cache.emplace(k, detail::golub_welsch(off, std::sqrt(M_PI))).first;
  }
  return it->second;
}

// Weight 1 on [-1, 1].
inline const QuadratureRule& gauss_legendre(int k) {
  static std::map<int, QuadratureRule> cache;
  auto it = cache.find(k);
  if (it == cache.end()) {
    RealVector off(k - 1);
    for (int i = 1; i < k; ++i) off[i - 1] = i / std::sqrt(4.0 * i * i - 1.0);
    it = cache.emplace(k, detail::golub_welsch(off, 2.0)).first;
  }
  return it->second;
}

// Composite Gauss-Legendre rule on [a, b] with roughly `points` nodes split
// over `panels` panels.
inline QuadratureRule composite_legendre(double a, double b, int points, int panels) {
  const int per = std::max(2, points / std::max(1, panels));
  const QuadratureRule& base = gauss_legendre(per);
  QuadratureRule rule;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    for (std::size_t i = 0; i < base.nodes.size(); ++i) {
      rule.nodes.push_back(lo + 0.5 * h * (base.nodes[i] + 1.0));
      rule.weights.push_back(0.5 * h * base.weights[i]);
    }
  }
  return rule;
}

}  // namespace spfock
