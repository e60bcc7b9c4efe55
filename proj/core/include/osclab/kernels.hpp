// kernels.hpp - per-sample evaluation for each experiment, plus the batched
// time-grid sweeps they are built from. The sweeps compute the same values as
// the single-point functions in weyl.hpp, vectorized over grid times and
// partner sites.
#pragma once

#include "osclab/anderson.hpp"
#include "osclab/config.hpp"
#include "osclab/ensemble.hpp"
#include "osclab/freeboson.hpp"
#include "osclab/lattice.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <vector>

namespace osc {

// Relative and absolute slack used when counting envelope violations; covers
// rounding in sums over |Lambda| modes and nothing more.
inline constexpr double kViolationRelTol = 1e-12;
inline constexpr double kViolationAbsTol = 1e-14;

std::vector<SlotKey> result_layout(const ExperimentConfig& config);
SampleRecord evaluate_sample(const ExperimentConfig& config, std::uint64_t index);

// Sites at l1 distance exactly d from the center, ascending.
std::vector<SiteIndex> shell_sites(const BoxGeometry& box, SiteIndex center, int d);

// Configured horizon if any, otherwise the spectral default.
TimeGrid sample_time_grid(const ExperimentConfig& config, const SpectralData& spec);

// lr_weyl_commutator_norm for f = a_f delta_x against g = a_g delta_y for each
// y in ys; rows are grid times, columns partner sites.
Eigen::MatrixXd lr_norm_grid(const SpectralData& spec, double lambda0, SiteIndex x, Complex a_f,
                             const std::vector<SiteIndex>& ys, Complex a_g, const TimeGrid& grid);

// Time-uniform bound on the LR norm through the eigencorrelators:
//   |Re a_f||Im a_g| Q_0 + |Im a_f||Re a_g| Q_0 + |Re a_f||Re a_g| Q_{-1} + |Im a_f||Im a_g| Q_{+1}.
double lr_envelope(const SpectralData& spec, double lambda0, SiteIndex x, Complex a_f, SiteIndex y,
                   Complex a_g);

// Entries of pq_commutator_matrix in the order (qq, qp, pq, pp), each T x |ys|.
std::array<Eigen::MatrixXd, 4> pq_grid(const SpectralData& spec, double lambda0, SiteIndex x,
                                       const std::vector<SiteIndex>& ys, const TimeGrid& grid);

// dynamic_correlation for f = a_f delta_x, g = a_g delta_y; T x |ys|.
Eigen::MatrixXcd correlation_grid(const SpectralData& spec, double lambda0,
                                  const OccupationVector& alpha, SiteIndex x, Complex a_f,
                                  const std::vector<SiteIndex>& ys, Complex a_g,
                                  const TimeGrid& grid);

struct QuasiLocalityGrid {
  int n_min = 0;
  // remainder_norm(n - n_min, i) = ||V f_{n,t_i}||
  Eigen::MatrixXd remainder_norm;
  // errors[a](n - n_min, i) = quasi_locality_error for the a-th occupation vector
  std::vector<Eigen::MatrixXd> errors;
};

// f = a_f delta_x with region {x}.
QuasiLocalityGrid quasi_locality_grid(const SpectralData& spec, const BoxGeometry& box,
                                      double lambda0, SiteIndex x, Complex a_f, int n_min,
                                      int n_max, const TimeGrid& grid,
                                      const std::vector<OccupationVector>& family);

}  // namespace osc
