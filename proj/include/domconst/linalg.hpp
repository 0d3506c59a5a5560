// SPDX-License-Identifier: Apache-2.0
//
// Small dense symmetric linear algebra: exactly-symmetric matrix storage,
// Cholesky factorization with a condition estimate, a cyclic Jacobi
// eigensolver and the largest eigenpair of a symmetric-definite pencil.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "domconst/errors.hpp"

namespace domconst {

/// Dense symmetric matrix; writes go through set() which mirrors the entry,
/// so entries[i][j] == entries[j][i] holds exactly at all times.
class SymmetricMatrix {
public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}

  int dimension() const { return n_; }

  double operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * n_ + j];
  }

  void set(int i, int j, double v) {
    a_[static_cast<std::size_t>(i) * n_ + j] = v;
    a_[static_cast<std::size_t>(j) * n_ + i] = v;
  }

  void add(int i, int j, double v) { set(i, j, (*this)(i, j) + v); }

  double frobenius_norm() const {
    double s = 0.0;
    for (double x : a_) s += x * x;
    return std::sqrt(s);
  }

  std::vector<double> multiply(const std::vector<double>& x) const {
    std::vector<double> y(n_, 0.0);
    for (int i = 0; i < n_; ++i) {
      double s = 0.0;
      for (int j = 0; j < n_; ++j) s += (*this)(i, j) * x[j];
      y[i] = s;
    }
    return y;
  }

private:
  int n_ = 0;
  std::vector<double> a_;
};

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  std::vector<double> vectors; // column j (row-major n x n) pairs with values[j]
};

struct GeneralizedEigenMax {
  double value = 0.0;
  std::vector<double> coefficients; // unit 2-norm eigenvector of the pencil
};

namespace linalg_detail {

inline double vec_norm(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

// Lower Cholesky factor of an SPD matrix. Throws when a pivot fails or when
// the (diagonal based) condition estimate exceeds 1e13, naming the pivot.
inline std::vector<double> cholesky(const SymmetricMatrix& b) {
  const int n = b.dimension();
  std::vector<double> l(static_cast<std::size_t>(n) * n, 0.0);
  auto L = [&](int i, int j) -> double& { return l[static_cast<std::size_t>(i) * n + j]; };
  double dmin = std::numeric_limits<double>::infinity();
  double dmax = 0.0;
  int argmin = 0;
  for (int j = 0; j < n; ++j) {
    double d = b(j, j);
    for (int k = 0; k < j; ++k) d -= L(j, k) * L(j, k);
    if (!(d > 0.0) || !std::isfinite(d))
      throw IllConditionedBasisError(
          "Gram matrix is not positive definite at pivot " + std::to_string(j),
          j);
    const double ljj = std::sqrt(d);
    L(j, j) = ljj;
    if (ljj < dmin) { dmin = ljj; argmin = j; }
    dmax = std::max(dmax, ljj);
    for (int i = j + 1; i < n; ++i) {
      double s = b(i, j);
      for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      L(i, j) = s / ljj;
    }
  }
  const double cond_est = (dmax / dmin) * (dmax / dmin);
  if (cond_est > 1e13)
    throw IllConditionedBasisError(
        "Gram matrix condition estimate " + std::to_string(cond_est) +
            " exceeds 1e13 at pivot " + std::to_string(argmin),
        argmin);
  return l;
}

} // namespace linalg_detail

/// Cyclic Jacobi eigensolver for a dense symmetric matrix. Eigenvalues are
/// returned in ascending order with matching eigenvector columns.
inline EigenDecomposition cyclic_jacobi(SymmetricMatrix a, int max_sweeps = 50) {
  const int n = a.dimension();
  std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
  auto V = [&](int i, int j) -> double& { return v[static_cast<std::size_t>(i) * n + j]; };
  for (int i = 0; i < n; ++i) V(i, i) = 1.0;

  auto off_norm = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
    return std::sqrt(2.0 * s);
  };

  const double fro = std::max(a.frobenius_norm(), 1e-300);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (off_norm() <= 1e-15 * fro) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p), aqq = a(q, q);
        if (std::abs(apq) <= 1e-18 * (std::abs(app) + std::abs(aqq))) continue;
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a.set(k, p, c * akp - s * akq);
          a.set(k, q, s * akp + c * akq);
        }
        a.set(p, p, app - t * apq);
        a.set(q, q, aqq + t * apq);
        a.set(p, q, 0.0);
        for (int k = 0; k < n; ++k) {
          const double vkp = V(k, p), vkq = V(k, q);
          V(k, p) = c * vkp - s * vkq;
          V(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int l, int r) { return a(l, l) < a(r, r); });
  EigenDecomposition out;
  out.values.resize(n);
  out.vectors.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]);
    for (int i = 0; i < n; ++i)
      out.vectors[static_cast<std::size_t>(i) * n + j] = V(i, order[j]);
  }
  return out;
}

/// Largest eigenvalue (and its vector) of the pencil A x = lambda B x with B
/// symmetric positive definite, via a Cholesky split of B and cyclic Jacobi
/// on the transformed matrix.
inline GeneralizedEigenMax sym_generalized_eigen_max(const SymmetricMatrix& a,
                                                     const SymmetricMatrix& b) {
  const int n = a.dimension();
  if (n == 0 || b.dimension() != n)
    throw ArgumentError("sym_generalized_eigen_max: dimension mismatch");
  const std::vector<double> l = linalg_detail::cholesky(b);
  auto L = [&](int i, int j) { return l[static_cast<std::size_t>(i) * n + j]; };

  // W = L^{-1} A  (forward substitution per column of A)
  std::vector<double> w(static_cast<std::size_t>(n) * n, 0.0);
  auto W = [&](int i, int j) -> double& { return w[static_cast<std::size_t>(i) * n + j]; };
  for (int col = 0; col < n; ++col) {
    for (int i = 0; i < n; ++i) {
      double s = a(i, col);
      for (int k = 0; k < i; ++k) s -= L(i, k) * W(k, col);
      W(i, col) = s / L(i, i);
    }
  }
  // C = W L^{-T}: forward-solve each row of W against L, then symmetrize.
  std::vector<double> craw(static_cast<std::size_t>(n) * n, 0.0);
  for (int row = 0; row < n; ++row) {
    std::vector<double> x(n);
    for (int j = 0; j < n; ++j) {
      double s = W(row, j);
      for (int k = 0; k < j; ++k) s -= L(j, k) * x[k];
      x[j] = s / L(j, j);
    }
    for (int j = 0; j < n; ++j) craw[static_cast<std::size_t>(row) * n + j] = x[j];
  }
  SymmetricMatrix c(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      c.set(i, j, 0.5 * (craw[static_cast<std::size_t>(i) * n + j] +
                         craw[static_cast<std::size_t>(j) * n + i]));

  const EigenDecomposition ed = cyclic_jacobi(c);
  const int jmax = n - 1;
  // x = L^{-T} y (back substitution), normalized to unit 2-norm.
  std::vector<double> x(n);
  for (int i = n - 1; i >= 0; --i) {
    double s = ed.vectors[static_cast<std::size_t>(i) * n + jmax];
    for (int k = i + 1; k < n; ++k) s -= L(k, i) * x[k];
    x[i] = s / L(i, i);
  }
  const double nx = linalg_detail::vec_norm(x);
  for (double& xi : x) xi /= nx;
  return {ed.values[jmax], std::move(x)};
}

} // namespace domconst
