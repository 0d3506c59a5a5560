// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "domconst/linalg.hpp"

using namespace domconst;

namespace {

SymmetricMatrix from_eigen(const Eigen::MatrixXd& m) {
  SymmetricMatrix out(static_cast<int>(m.rows()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i; j < m.cols(); ++j) out.set(i, j, m(i, j));
  return out;
}

// Independent reference: Eigen's generalized self-adjoint solver.
double eigen_reference_max(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, b);
  return solver.eigenvalues().maxCoeff();
}

} // namespace

TEST_CASE("symmetric matrix storage mirrors writes") {
  SymmetricMatrix m(3);
  m.set(0, 2, 5.0);
  CHECK(m(2, 0) == 5.0);
  m.add(2, 0, 1.0);
  CHECK(m(0, 2) == 6.0);
}

TEST_CASE("jacobi eigensolver on a known matrix") {
  SymmetricMatrix m(2);
  m.set(0, 0, 2.0);
  m.set(1, 1, 1.0);
  const EigenDecomposition ed = cyclic_jacobi(m);
  CHECK(ed.values[0] == Catch::Approx(1.0));
  CHECK(ed.values[1] == Catch::Approx(2.0));
}

TEST_CASE("generalized eigenmax on diagonal pencils") {
  SymmetricMatrix a(2), b(2);
  a.set(0, 0, 2.0);
  a.set(1, 1, 1.0);
  b.set(0, 0, 1.0);
  b.set(1, 1, 1.0);
  CHECK(sym_generalized_eigen_max(a, b).value == Catch::Approx(2.0));

  SymmetricMatrix a2(2), b2(2);
  a2.set(0, 0, 1.0);
  a2.set(1, 1, 1.0);
  b2.set(0, 0, 2.0);
  b2.set(1, 1, 1.0);
  CHECK(sym_generalized_eigen_max(a2, b2).value == Catch::Approx(1.0));
}

TEST_CASE("random pencils match the reference solver") {
  std::mt19937 rng(12345);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 11);
    Eigen::MatrixXd r(n, n), s(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        r(i, j) = gauss(rng);
        s(i, j) = gauss(rng);
      }
    const Eigen::MatrixXd a = 0.5 * (r + r.transpose());
    const Eigen::MatrixXd b =
        s * s.transpose() + 0.1 * Eigen::MatrixXd::Identity(n, n);
    const double ref = eigen_reference_max(a, b);
    const GeneralizedEigenMax got =
        sym_generalized_eigen_max(from_eigen(a), from_eigen(b));
    CHECK(got.value == Catch::Approx(ref).epsilon(1e-9));
  }
}

TEST_CASE("eigenpair residual stays below the stated bound") {
  std::mt19937 rng(777);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 8;
    SymmetricMatrix a(n), b(n);
    Eigen::MatrixXd s(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s(i, j) = gauss(rng);
    const Eigen::MatrixXd bm =
        s * s.transpose() + 0.5 * Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        a.set(i, j, gauss(rng));
        b.set(i, j, bm(i, j));
      }
    const GeneralizedEigenMax ge = sym_generalized_eigen_max(a, b);
    const std::vector<double> ax = a.multiply(ge.coefficients);
    const std::vector<double> bx = b.multiply(ge.coefficients);
    double resid = 0.0, xnorm = 0.0;
    for (int i = 0; i < n; ++i) {
      const double r = ax[i] - ge.value * bx[i];
      resid += r * r;
      xnorm += ge.coefficients[i] * ge.coefficients[i];
    }
    resid = std::sqrt(resid);
    xnorm = std::sqrt(xnorm);
    const double bound =
        1e-9 * (a.frobenius_norm() + std::abs(ge.value) * b.frobenius_norm()) *
        xnorm;
    CHECK(resid <= bound);
  }
}

TEST_CASE("indefinite or ill-conditioned B is rejected with a pivot index") {
  SymmetricMatrix a(2), b(2);
  a.set(0, 0, 1.0);
  a.set(1, 1, 1.0);
  b.set(0, 0, 1.0);
  b.set(1, 1, -1.0);
  try {
    sym_generalized_eigen_max(a, b);
    FAIL("expected IllConditionedBasisError");
  } catch (const IllConditionedBasisError& e) {
    CHECK(e.pivot_index == 1);
  }

  SymmetricMatrix bc(2);
  bc.set(0, 0, 1.0);
  bc.set(1, 1, 1e-30);
  try {
    sym_generalized_eigen_max(a, bc);
    FAIL("expected IllConditionedBasisError");
  } catch (const IllConditionedBasisError& e) {
    CHECK(e.pivot_index == 1);
  }
}
