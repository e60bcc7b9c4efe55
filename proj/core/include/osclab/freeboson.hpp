// freeboson.hpp - the real-linear map V between site fields and normal-mode
// amplitudes, the effective Weyl dynamics f_t = V^{-1} e^{2it gamma} V f, the
// spectral projection X onto the localized modes, and many-body energies.
//
// Inner products are antilinear in the first argument throughout.
#pragma once

#include "osclab/anderson.hpp"
#include "osclab/lattice.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <vector>

namespace osc {

using Complex = std::complex<double>;

// f : Lambda -> C. The support is derived from the values, so it can never
// disagree with them.
struct ComplexField {
  Eigen::VectorXcd values;

  ComplexField() = default;
  explicit ComplexField(std::size_t n) : values(Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n))) {}
  explicit ComplexField(Eigen::VectorXcd v) : values(std::move(v)) {}
  static ComplexField delta(std::size_t n, SiteIndex x, Complex value = 1.0);

  std::size_t size() const noexcept { return static_cast<std::size_t>(values.size()); }
  SiteSet support() const;
  Complex& operator[](SiteIndex x) { return values(static_cast<Eigen::Index>(x)); }
  Complex operator[](SiteIndex x) const { return values(static_cast<Eigen::Index>(x)); }
};

// Complex amplitudes indexed by normal mode j.
struct ModeVector {
  Eigen::VectorXcd amplitudes;

  ModeVector() = default;
  explicit ModeVector(Eigen::VectorXcd a) : amplitudes(std::move(a)) {}
  std::size_t size() const noexcept { return static_cast<std::size_t>(amplitudes.size()); }
};

// alpha in N_0^{|Lambda|}
struct OccupationVector {
  std::vector<unsigned> counts;

  OccupationVector() = default;
  explicit OccupationVector(std::vector<unsigned> c) : counts(std::move(c)) {}
  static OccupationVector zeros(std::size_t n) { return OccupationVector(std::vector<unsigned>(n, 0)); }

  std::size_t size() const noexcept { return counts.size(); }
  unsigned max_occupation() const noexcept;
  // supp alpha within the first `count` modes (the localized prefix).
  bool supported_in_prefix(std::size_t count) const noexcept;
  bool operator==(const OccupationVector&) const = default;
};

inline Complex inner(const ComplexField& a, const ComplexField& b) { return a.values.dot(b.values); }
inline Complex inner(const ModeVector& a, const ModeVector& b) { return a.amplitudes.dot(b.amplitudes); }

ModeVector v_map(const SpectralData& spec, const ComplexField& f);
ComplexField v_inverse(const SpectralData& spec, const ModeVector& g);

// e^{2it gamma} g
ModeVector rotate_modes(const SpectralData& spec, const ModeVector& g, double t);
// 1_{S} g with S the first `count` modes.
ModeVector mask_modes(const ModeVector& g, std::size_t count);

ComplexField evolve(const SpectralData& spec, const ComplexField& f, double t);
ComplexField project_localized(const SpectralData& spec, double lambda0, const ComplexField& f);

// Real block operator sending (Re g, Im g) to (Re X g_t, Im X g_t):
//   [ cos(2t sqrt h) X            -sin(2t sqrt h) h^{1/2} X ]
//   [ sin(2t sqrt h) h^{-1/2} X    cos(2t sqrt h) X         ]
struct DynamicsBlocks {
  Eigen::MatrixXd upper_left;
  Eigen::MatrixXd upper_right;
  Eigen::MatrixXd lower_left;
  Eigen::MatrixXd lower_right;

  ComplexField apply(const ComplexField& g) const;
};

DynamicsBlocks dynamics_block_matrix(const SpectralData& spec, double lambda0, double t);

struct TimeGrid {
  std::vector<double> times;

  // points equally spaced on [0, t_max], both ends included.
  static TimeGrid uniform(double t_max, std::size_t points);
};

inline constexpr std::size_t kDefaultTimePoints = 2000;

// Horizon 4 pi / min_j (gamma_{j+1} - gamma_j); falls back to 4 pi / gamma_1
// for a single mode.
double default_time_horizon(const SpectralData& spec);
TimeGrid default_time_grid(const SpectralData& spec, std::size_t points = kDefaultTimePoints);

struct OverlapInterval {
  double lower = 0.0;  // max over the grid of |<f, X g_t>|
  double upper = 0.0;  // sum over localized modes of the per-mode maximum over all t
};

OverlapInterval sup_t_overlap(const SpectralData& spec, double lambda0, const ComplexField& f,
                              const ComplexField& g, const TimeGrid& grid);

// E_alpha = sum_j gamma_j (2 alpha_j + 1)
double many_body_energy(const SpectralData& spec, const OccupationVector& alpha);

// (2 kappa / |Lambda|) sum_{j : gamma_j^2 <= lambda0} gamma_j
double excitation_energy_density(const SpectralData& spec, double lambda0, unsigned kappa);

// N(lambda) = #{j : gamma_j^2 < lambda} at every grid point.
std::vector<std::size_t> counting_function(const SpectralData& spec,
                                           const std::vector<double>& lambda_grid);

}  // namespace osc
