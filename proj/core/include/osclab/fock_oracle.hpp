// fock_oracle.hpp - brute-force reference on truncated Fock spaces.
//
// Everything here is built from explicit matrices in the normal-mode tensor
// basis |alpha_1> x ... x |alpha_m>, each factor truncated to occupations
// 0..D-1. Only meant for |Lambda| <= 3; the closed forms in weyl.hpp are
// checked against it.
#pragma once

#include "osclab/anderson.hpp"
#include "osclab/freeboson.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <utility>
#include <vector>

namespace osc {

struct TruncationSpec {
  unsigned per_mode_dim = 14;
  unsigned occupation_cutoff = 4;  // columns kept when measuring restricted norms
  std::size_t budget = 20736;      // largest admissible D^m

  // Throws std::invalid_argument for D < 2 or a cutoff that does not fit in D.
  void validate() const;
};

// (a, a^dagger) on span{|0>, ..., |D-1>}.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> ladder_matrices(unsigned dim);

struct WeylOracleMatrix {
  Eigen::MatrixXcd matrix;
  // Weight that the lower half of the columns put on the last basis state;
  // large values mean the truncation is visible in the low block.
  double trailing_mass = 0.0;

  bool truncation_warning() const noexcept { return trailing_mass > 1e-10; }
};

// exp(i/sqrt2 (conj(z) a + z a^dagger)) from the eigendecomposition of the
// truncated Hermitian generator.
WeylOracleMatrix weyl_matrix_1d_oracle(Complex z, unsigned dim);

class RestrictedOperators {
 public:
  RestrictedOperators(const SpectralData& spec, double lambda0, const TruncationSpec& trunc);

  std::size_t mode_count() const noexcept { return modes_; }
  std::size_t dimension() const noexcept { return dim_; }
  std::size_t localized_count() const noexcept { return count_; }
  const TruncationSpec& truncation() const noexcept { return trunc_; }

  // Diagonal of H = sum_j gamma_j (2 b_j^dagger b_j + 1).
  const Eigen::VectorXd& energies() const noexcept { return energies_; }
  Eigen::MatrixXcd hamiltonian() const;
  // Projection onto states whose excited modes are all localized.
  Eigen::MatrixXcd localized_projection() const;
  // Projection onto states with every occupation <= occupation_cutoff.
  Eigen::MatrixXcd cutoff_projection() const;

  Eigen::MatrixXcd position(SiteIndex x) const;
  Eigen::MatrixXcd momentum(SiteIndex x) const;

  // exp(i(q(f) + p(f))) from the Hermitian generator on the full tensor space.
  Eigen::MatrixXcd weyl(const ComplexField& f) const;
  // Kronecker product of single-mode oracle matrices at z = (Vf)(j).
  Eigen::MatrixXcd weyl_tensor(const ComplexField& f) const;

  // e^{itH} A e^{-itH}
  Eigen::MatrixXcd heisenberg(const Eigen::MatrixXcd& a, double t) const;
  // P_I A P_I
  Eigen::MatrixXcd restrict(const Eigen::MatrixXcd& a) const;

  // || P_I A P_I P_cut ||
  double restricted_norm(const Eigen::MatrixXcd& a) const;
  // || (A_I B_I - B_I A_I) P_cut ||
  double restricted_commutator_norm(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) const;

  std::size_t index_of(const OccupationVector& alpha) const;
  OccupationVector occupation_of(std::size_t index) const;
  Eigen::VectorXcd basis_state(const OccupationVector& alpha) const;

 private:
  Eigen::MatrixXcd mode_operator(std::size_t j, const Eigen::MatrixXd& single) const;

  SpectralData spec_;
  TruncationSpec trunc_;
  std::size_t modes_ = 0;
  std::size_t dim_ = 0;
  std::size_t count_ = 0;
  Eigen::VectorXd energies_;
  Eigen::VectorXd localized_mask_;
  Eigen::VectorXd cutoff_mask_;
  std::vector<Eigen::MatrixXcd> lowering_;
};

// Throws ResourceError when D^m exceeds the budget and std::invalid_argument
// for more than three modes.
RestrictedOperators build_restricted_operators(const SpectralData& spec, double lambda0,
                                               const TruncationSpec& trunc = {});

// Largest singular value of AB - BA.
double oracle_commutator_norm(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);
// <psi| A |psi>
Complex oracle_expectation(const Eigen::VectorXcd& state, const Eigen::MatrixXcd& a);
// Largest singular value.
double spectral_norm(const Eigen::MatrixXcd& a);

}  // namespace osc
