// weyl.hpp - closed-form Weyl-operator algebra on the free-boson Fock space.
//
// W(f) = exp(i(q(f) + p(f))) factorizes over normal modes as the product of
// single-mode operators W_z = exp(i/sqrt2 (conj(z) a + z a^dagger)) with
// z = (Vf)(j). Operators are carried as (mode displacement, phase)
// descriptors; no matrices are ever formed here.
#pragma once

#include "osclab/anderson.hpp"
#include "osclab/freeboson.hpp"
#include "osclab/lattice.hpp"

#include <Eigen/Dense>

#include <cstddef>

namespace osc {

// Generalized Laguerre polynomial L_n^{(k)}(x) by forward recurrence in n.
double laguerre(unsigned n, unsigned k, double x);
// L_n^{(0)}(x) - 1 without cancellation for small x.
double laguerre_minus_one(unsigned n, double x);

// <n| W_z |k> in the number basis.
Complex matrix_element_1d(unsigned n, unsigned k, Complex z);

// <n| W_z |n> = L_n(|z|^2/2) e^{-|z|^2/4}; real.
double diagonal_element_1d(unsigned n, Complex z);

// e^{i phase} W(f), stored through Vf.
struct WeylDescriptor {
  ModeVector displacement;
  double phase = 0.0;

  static WeylDescriptor identity(std::size_t modes);
  static WeylDescriptor describe(const SpectralData& spec, const ComplexField& f);
};

// Operator product, using W(a) W(b) = e^{-(i/2) Im<a,b>} W(a+b).
WeylDescriptor compose(const WeylDescriptor& a, const WeylDescriptor& b);

// <psi_alpha| e^{i phase} W(f) |psi_beta>
Complex matrix_element(const OccupationVector& alpha, const OccupationVector& beta,
                       const WeylDescriptor& w);
Complex matrix_element(const SpectralData& spec, const OccupationVector& alpha,
                       const OccupationVector& beta, const ComplexField& f);

// <psi_alpha| W |psi_alpha> for the displacement z; real. Only occupied modes
// need a Laguerre factor.
double diagonal_expectation(const OccupationVector& alpha, const ModeVector& z);
// 1 - <psi_alpha| W |psi_alpha>, accurate when the displacement is tiny.
double diagonal_defect(const OccupationVector& alpha, const ModeVector& z);

struct RestrictionData {
  double lambda0 = 0.0;
  std::size_t count = 0;  // S = first `count` modes
  double constant = 1.0;  // C_f = exp(-|1_{S^c} V f|^2 / 4)
};

RestrictionData restriction_constant(const SpectralData& spec, double lambda0,
                                     const ComplexField& f);

// || [tau_t(W(f)_I), W(g)_I] || = C_f C_g |e^{-i Im<X f_t, X g>} - 1|
double lr_weyl_commutator_norm(const SpectralData& spec, double lambda0, const ComplexField& f,
                               const ComplexField& g, double t);

// Coefficients c with [tau_t(A_I), B_I] = i c P_I for A, B in {q_x, p_x} x {q_y, p_y}:
//   row 0: A = q_x, row 1: A = p_x; column 0: B = q_y, column 1: B = p_y.
Eigen::Matrix2d pq_commutator_matrix(const SpectralData& spec, double lambda0, SiteIndex x,
                                     SiteIndex y, double t);

// Matching eigencorrelator envelopes (Q_{-1}, Q_0; Q_0, Q_{+1}).
Eigen::Matrix2d pq_commutator_envelope(const SpectralData& spec, double lambda0, SiteIndex x,
                                       SiteIndex y);

// <psi_alpha, tau_t(W(f)_I) W(g)_I psi_alpha>
//   - <psi_alpha, tau_t(W(f)_I) psi_alpha> <psi_alpha, W(g)_I psi_alpha>.
// Requires supp alpha inside the localized modes.
Complex dynamic_correlation(const SpectralData& spec, double lambda0, const OccupationVector& alpha,
                            const ComplexField& f, const ComplexField& g, double t);

// The same quantity from the resolution of the identity between the two Weyl
// factors, summing occupations up to beta_cutoff on every displaced mode.
Complex correlation_series(const SpectralData& spec, double lambda0, const OccupationVector& alpha,
                           const ComplexField& f, const ComplexField& g, double t,
                           unsigned beta_cutoff);

// X 1_{Lambda \ region(n)} X f_t: the part of the localized evolution that
// leaks out of the n-neighborhood of the region.
ComplexField localized_remainder(const SpectralData& spec, const BoxGeometry& box, double lambda0,
                                 const ComplexField& f, const SiteSet& region, int n, double t);

// || (tau_t(W(f)) - C_f W(X 1_{region(n)} X f_t))_I psi_alpha ||, exact.
double quasi_locality_error(const SpectralData& spec, const BoxGeometry& box, double lambda0,
                            const OccupationVector& alpha, const ComplexField& f,
                            const SiteSet& region, int n, double t);

// sqrt(2 (kappa + 1)) || V f_{n,t} ||
double quasi_locality_bound(const SpectralData& spec, const BoxGeometry& box, double lambda0,
                            const ComplexField& f, const SiteSet& region, int n, double t,
                            unsigned kappa);

}  // namespace osc
