#include "osclab/eigensolver.hpp"
#include "osclab/errors.hpp"
#include "osclab/lattice.hpp"

#include "reference.hpp"

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

using namespace osc;

TEST(SymmetricEigen, MatchesEigenOnRandomMatrices) {
  std::mt19937_64 rng(11);
  for (int n : {1, 2, 3, 7, 20, 64}) {
    const Eigen::MatrixXd a = reference::random_symmetric(rng, n);
    const SymmetricEigenResult r = symmetric_eigen(a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(a);
    EXPECT_LT((r.eigenvalues - ref.eigenvalues()).cwiseAbs().maxCoeff(), 1e-12 * n) << n;
    const Eigen::MatrixXd& v = r.eigenvectors;
    EXPECT_LT((v.transpose() * v - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-12 * n);
    EXPECT_LT((v * r.eigenvalues.asDiagonal() * v.transpose() - a).cwiseAbs().maxCoeff(), 1e-12 * n);
  }
}

TEST(SymmetricEigen, AscendingAndValuesOnlyAgree) {
  std::mt19937_64 rng(5);
  const Eigen::MatrixXd a = reference::random_symmetric(rng, 30);
  const auto full = symmetric_eigen(a, true);
  const auto values = symmetric_eigen(a, false);
  EXPECT_EQ(values.eigenvectors.size(), 0);
  EXPECT_LT((full.eigenvalues - values.eigenvalues).cwiseAbs().maxCoeff(), 1e-12);
  for (Eigen::Index i = 1; i < full.eigenvalues.size(); ++i) {
    EXPECT_LE(full.eigenvalues(i - 1), full.eigenvalues(i));
  }
}

// Chains are tridiagonal, so eigenvalue counts and characteristic polynomial
// roots can be checked without any dense eigensolver.
TEST(SymmetricEigen, ChainSpectraAgreeWithSturmCounts) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = 40;
  Eigen::MatrixXd h = neumann_laplacian(BoxGeometry::chain(n));
  for (int i = 0; i < n; ++i) h(i, i) += u(rng);
  const Eigen::VectorXd diag = h.diagonal();
  const Eigen::VectorXd off = h.diagonal(1);
  const auto r = symmetric_eigen(h, false);
  for (int j = 0; j < n; ++j) {
    const double ev = r.eigenvalues(j);
    EXPECT_EQ(reference::sturm_count(diag, off, ev - 1e-9), j);
    EXPECT_EQ(reference::sturm_count(diag, off, ev + 1e-9), j + 1);
    const double lo = reference::characteristic_polynomial(diag, off, ev - 1e-9);
    const double hi = reference::characteristic_polynomial(diag, off, ev + 1e-9);
    EXPECT_LE(lo * hi, 0.0);
  }
}

TEST(SymmetricEigen, FreeLaplacianClosedForm) {
  const int n = 25;
  const auto r = symmetric_eigen(neumann_laplacian(BoxGeometry::chain(n)), false);
  for (int j = 0; j < n; ++j) {
    const double exact = 2.0 - 2.0 * std::cos(M_PI * j / n);
    EXPECT_NEAR(r.eigenvalues(j), exact, 1e-12);
  }
}

TEST(SymmetricEigen, RejectsBadInput) {
  Eigen::MatrixXd a(2, 3);
  a.setZero();
  EXPECT_THROW(symmetric_eigen(a), std::invalid_argument);
  Eigen::MatrixXd b(2, 2);
  b << 1, 2, 3, 4;
  EXPECT_THROW(symmetric_eigen(b), std::invalid_argument);
  EXPECT_GT(symmetry_defect(b), 0.1);
}

TEST(SymmetricEigen, DegenerateSpectrumKeepsOrthonormalBasis) {
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(6, 6) * 2.5;
  const auto r = symmetric_eigen(a);
  EXPECT_LT((r.eigenvalues.array() - 2.5).abs().maxCoeff(), 1e-14);
  EXPECT_TRUE((r.eigenvectors.transpose() * r.eigenvectors).isIdentity(1e-13));
}
