#include "osclab/fock_oracle.hpp"

#include "osclab/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace osc {
namespace {

Eigen::MatrixXcd hermitian_exponential(const Eigen::MatrixXcd& generator) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(generator);
  if (solver.info() != Eigen::Success) {
    throw NumericError("fock oracle: Hermitian eigensolver failed");
  }
  const Eigen::VectorXcd phases =
      solver.eigenvalues().unaryExpr([](double v) { return std::polar(1.0, v); });
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

Eigen::MatrixXcd kronecker(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

std::size_t power(std::size_t base, std::size_t exponent) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exponent; ++i) r *= base;
  return r;
}

}  // namespace

void TruncationSpec::validate() const {
  if (per_mode_dim < 2) throw std::invalid_argument("TruncationSpec: per-mode dimension must be >= 2");
  if (occupation_cutoff + 1 >= per_mode_dim) {
    throw std::invalid_argument("TruncationSpec: occupation cutoff must stay below D - 1");
  }
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> ladder_matrices(unsigned dim) {
  if (dim < 2) throw std::invalid_argument("ladder_matrices: dimension must be >= 2");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  for (unsigned k = 1; k < dim; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  Eigen::MatrixXd adag = a.transpose();
  return {std::move(a), std::move(adag)};
}

WeylOracleMatrix weyl_matrix_1d_oracle(Complex z, unsigned dim) {
  const auto [a, adag] = ladder_matrices(dim);
  const Eigen::MatrixXcd generator =
      (std::conj(z) * a.cast<Complex>() + z * adag.cast<Complex>()) / std::numbers::sqrt2;
  WeylOracleMatrix out;
  out.matrix = hermitian_exponential(generator);
  for (unsigned k = 0; k < dim / 2; ++k) out.trailing_mass += std::norm(out.matrix(dim - 1, k));
  return out;
}

RestrictedOperators::RestrictedOperators(const SpectralData& spec, double lambda0,
                                         const TruncationSpec& trunc)
    : spec_(spec), trunc_(trunc), modes_(spec.size()) {
  trunc_.validate();
  if (!spec.has_modes()) throw std::invalid_argument("fock oracle: spectral data carries no modes");
  if (modes_ == 0 || modes_ > 3) {
    throw std::invalid_argument("fock oracle: supports 1 to 3 modes, got " + std::to_string(modes_));
  }
  if (!(spec.eigenvalues(0) > 0.0)) throw std::invalid_argument("fock oracle: h must be positive");
  dim_ = power(trunc_.per_mode_dim, modes_);
  if (dim_ > trunc_.budget) {
    throw ResourceError("fock oracle: D^m = " + std::to_string(trunc_.per_mode_dim) + "^" +
                        std::to_string(modes_) + " exceeds budget " + std::to_string(trunc_.budget));
  }
  count_ = osc::localized_count(spec, lambda0);

  energies_.resize(static_cast<Eigen::Index>(dim_));
  localized_mask_.resize(static_cast<Eigen::Index>(dim_));
  cutoff_mask_.resize(static_cast<Eigen::Index>(dim_));
  for (std::size_t i = 0; i < dim_; ++i) {
    const OccupationVector alpha = occupation_of(i);
    const auto ii = static_cast<Eigen::Index>(i);
    energies_(ii) = many_body_energy(spec, alpha);
    localized_mask_(ii) = alpha.supported_in_prefix(count_) ? 1.0 : 0.0;
    cutoff_mask_(ii) = alpha.max_occupation() <= trunc_.occupation_cutoff ? 1.0 : 0.0;
  }

  const Eigen::MatrixXd a = ladder_matrices(trunc_.per_mode_dim).first;
  for (std::size_t j = 0; j < modes_; ++j) lowering_.push_back(mode_operator(j, a));
}

Eigen::MatrixXcd RestrictedOperators::mode_operator(std::size_t j, const Eigen::MatrixXd& single) const {
  const std::size_t d = trunc_.per_mode_dim;
  const std::size_t stride = power(d, modes_ - 1 - j);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim_),
                                                static_cast<Eigen::Index>(dim_));
  for (std::size_t c = 0; c < dim_; ++c) {
    const std::size_t dc = (c / stride) % d;
    const std::size_t base = c - dc * stride;
    for (std::size_t dr = 0; dr < d; ++dr) {
      const double v = single(static_cast<Eigen::Index>(dr), static_cast<Eigen::Index>(dc));
      if (v != 0.0) {
        out(static_cast<Eigen::Index>(base + dr * stride), static_cast<Eigen::Index>(c)) = v;
      }
    }
  }
  return out;
}

Eigen::MatrixXcd RestrictedOperators::hamiltonian() const {
  return energies_.cast<Complex>().asDiagonal();
}

Eigen::MatrixXcd RestrictedOperators::localized_projection() const {
  return localized_mask_.cast<Complex>().asDiagonal();
}

Eigen::MatrixXcd RestrictedOperators::cutoff_projection() const {
  return cutoff_mask_.cast<Complex>().asDiagonal();
}

Eigen::MatrixXcd RestrictedOperators::position(SiteIndex x) const {
  if (x >= modes_) throw std::invalid_argument("fock oracle: site outside box");
  Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim_),
                                              static_cast<Eigen::Index>(dim_));
  for (std::size_t j = 0; j < modes_; ++j) {
    const auto ji = static_cast<Eigen::Index>(j);
    const double w = spec_.modes(static_cast<Eigen::Index>(x), ji) / std::sqrt(spec_.gammas(ji));
    q += (w / std::numbers::sqrt2) * (lowering_[j] + lowering_[j].adjoint());
  }
  return q;
}

Eigen::MatrixXcd RestrictedOperators::momentum(SiteIndex x) const {
  if (x >= modes_) throw std::invalid_argument("fock oracle: site outside box");
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim_),
                                              static_cast<Eigen::Index>(dim_));
  const Complex minus_i(0.0, -1.0);
  for (std::size_t j = 0; j < modes_; ++j) {
    const auto ji = static_cast<Eigen::Index>(j);
    const double w = spec_.modes(static_cast<Eigen::Index>(x), ji) * std::sqrt(spec_.gammas(ji));
    p += (minus_i * w / std::numbers::sqrt2) * (lowering_[j] - lowering_[j].adjoint());
  }
  return p;
}

Eigen::MatrixXcd RestrictedOperators::weyl(const ComplexField& f) const {
  if (f.size() != modes_) throw std::invalid_argument("fock oracle: field size mismatch");
  Eigen::MatrixXcd generator = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim_),
                                                      static_cast<Eigen::Index>(dim_));
  for (SiteIndex x = 0; x < modes_; ++x) {
    if (f[x].real() != 0.0) generator += f[x].real() * position(x);
    if (f[x].imag() != 0.0) generator += f[x].imag() * momentum(x);
  }
  return hermitian_exponential(generator);
}

Eigen::MatrixXcd RestrictedOperators::weyl_tensor(const ComplexField& f) const {
  const ModeVector z = v_map(spec_, f);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (std::size_t j = 0; j < modes_; ++j) {
    out = kronecker(out, weyl_matrix_1d_oracle(z.amplitudes(static_cast<Eigen::Index>(j)),
                                               trunc_.per_mode_dim).matrix);
  }
  return out;
}

Eigen::MatrixXcd RestrictedOperators::heisenberg(const Eigen::MatrixXcd& a, double t) const {
  Eigen::MatrixXcd out = a;
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
      out(r, c) *= std::polar(1.0, t * (energies_(r) - energies_(c)));
    }
  }
  return out;
}

Eigen::MatrixXcd RestrictedOperators::restrict(const Eigen::MatrixXcd& a) const {
  const auto p = localized_mask_.cast<Complex>().asDiagonal();
  return p * a * p;
}

double RestrictedOperators::restricted_norm(const Eigen::MatrixXcd& a) const {
  return spectral_norm(restrict(a) * cutoff_mask_.cast<Complex>().asDiagonal());
}

double RestrictedOperators::restricted_commutator_norm(const Eigen::MatrixXcd& a,
                                                       const Eigen::MatrixXcd& b) const {
  const Eigen::MatrixXcd ai = restrict(a);
  const Eigen::MatrixXcd bi = restrict(b);
  return spectral_norm((ai * bi - bi * ai) * cutoff_mask_.cast<Complex>().asDiagonal());
}

std::size_t RestrictedOperators::index_of(const OccupationVector& alpha) const {
  if (alpha.size() != modes_) throw std::invalid_argument("fock oracle: occupation size mismatch");
  std::size_t index = 0;
  for (unsigned c : alpha.counts) {
    if (c >= trunc_.per_mode_dim) throw std::invalid_argument("fock oracle: occupation exceeds truncation");
    index = index * trunc_.per_mode_dim + c;
  }
  return index;
}

OccupationVector RestrictedOperators::occupation_of(std::size_t index) const {
  if (index >= dim_ && dim_ != 0) throw std::invalid_argument("fock oracle: basis index out of range");
  std::vector<unsigned> counts(modes_);
  for (std::size_t j = modes_; j-- > 0;) {
    counts[j] = static_cast<unsigned>(index % trunc_.per_mode_dim);
    index /= trunc_.per_mode_dim;
  }
  return OccupationVector(std::move(counts));
}

Eigen::VectorXcd RestrictedOperators::basis_state(const OccupationVector& alpha) const {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim_));
  psi(static_cast<Eigen::Index>(index_of(alpha))) = 1.0;
  return psi;
}

RestrictedOperators build_restricted_operators(const SpectralData& spec, double lambda0,
                                               const TruncationSpec& trunc) {
  return RestrictedOperators(spec, lambda0, trunc);
}

double oracle_commutator_norm(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return spectral_norm(a * b - b * a);
}

Complex oracle_expectation(const Eigen::VectorXcd& state, const Eigen::MatrixXcd& a) {
  return state.dot(a * state);
}

double spectral_norm(const Eigen::MatrixXcd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
  return svd.singularValues()(0);
}

}  // namespace osc
