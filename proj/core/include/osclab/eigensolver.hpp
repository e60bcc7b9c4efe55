// eigensolver.hpp - dense real symmetric eigensolver.
//
// Householder reduction to tridiagonal form followed by the implicit-shift QL
// iteration, in the EISPACK tred2/tql2 lineage.
#pragma once

#include <Eigen/Dense>

namespace osc {

struct SymmetricEigenResult {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // column j belongs to eigenvalue j; empty if not requested
  int max_iterations = 0;        // largest QL sweep count over all eigenvalues
};

// Throws std::invalid_argument for non-square or non-symmetric input and
// NumericError if the QL iteration fails to converge.
SymmetricEigenResult symmetric_eigen(const Eigen::MatrixXd& a, bool compute_vectors = true);

// Largest |a_ij - a_ji| relative to max |a_ij|.
double symmetry_defect(const Eigen::MatrixXd& a);

}  // namespace osc
