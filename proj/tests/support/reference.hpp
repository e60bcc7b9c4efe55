// reference.hpp - slow, independent reference computations for tests.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>

namespace osc::reference {

// L_n^{(k)}(x) = sum_i (-1)^i C(n+k, n-i) x^i / i!
double laguerre_direct(unsigned n, unsigned k, double x);

// Number of eigenvalues of the symmetric tridiagonal matrix (diag, off) that
// lie strictly below lambda, from the signs of the leading principal minors.
int sturm_count(const Eigen::VectorXd& diag, const Eigen::VectorXd& off, double lambda);

// det(t - lambda) by the three-term continuant recurrence.
double characteristic_polynomial(const Eigen::VectorXd& diag, const Eigen::VectorXd& off,
                                 double lambda);

// Random symmetric matrix with entries uniform in [-1, 1].
Eigen::MatrixXd random_symmetric(std::mt19937_64& rng, int n);

// exp of a skew-Hermitian or general matrix by scaling and squaring of the
// Taylor series; only for small well-conditioned matrices.
Eigen::MatrixXcd taylor_exponential(const Eigen::MatrixXcd& a);

}  // namespace osc::reference
