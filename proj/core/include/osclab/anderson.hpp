// anderson.hpp - disorder sampling and the effective one-particle Hamiltonian
// h = (graph Laplacian) + k together with its spectral data.
#pragma once

#include "osclab/lattice.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace osc {

// Independent random streams keyed by (seed, sample index, stream tag). Any
// sample can be regenerated without touching the others.
enum class StreamTag : std::uint32_t { disorder = 0, alpha_family = 1, test = 2 };

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t index, StreamTag tag);

// Uniform on [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

struct DisorderConfig {
  double k_max = 1.0;
  std::uint64_t master_seed = 0;
  // Quantiles q(p_i) at p_i = i/(m-1), linearly interpolated. Empty means
  // uniform on [0, k_max].
  std::vector<double> inverse_cdf;

  // Throws ConfigError.
  void validate() const;
};

struct DisorderSample {
  Eigen::VectorXd k;
  std::uint64_t index = 0;
};

// Deterministic in (config.master_seed, index); entries lie in (0, k_max].
DisorderSample sample_disorder(const DisorderConfig& config, const BoxGeometry& box,
                               std::uint64_t index);

// h = laplacian(bc) + diag(k)
Eigen::MatrixXd assemble(const BoxGeometry& box, const DisorderSample& sample,
                         BoundaryCondition bc = BoundaryCondition::neumann);

// Eigenpairs (gamma_j^2, phi_j) of h. gamma_j = sqrt(max(gamma_j^2, 0)).
struct SpectralData {
  Eigen::VectorXd eigenvalues;  // gamma_j^2, ascending
  Eigen::VectorXd gammas;
  Eigen::MatrixXd modes;        // orthonormal columns phi_j; empty for eigenvalue-only data
  BoundaryCondition bc = BoundaryCondition::neumann;

  std::size_t size() const noexcept { return static_cast<std::size_t>(eigenvalues.size()); }
  bool has_modes() const noexcept { return modes.size() > 0; }
  // ||h|| = max |gamma_j^2|
  double norm() const noexcept;
};

// Throws std::invalid_argument for non-symmetric input and NumericError on
// eigensolver failure.
SpectralData diagonalize(const Eigen::MatrixXd& h,
                         BoundaryCondition bc = BoundaryCondition::neumann,
                         bool compute_modes = true);

// max |O Gamma^2 O^T - h|
double reconstruction_error(const SpectralData& spec, const Eigen::MatrixXd& h);

inline constexpr double kFullSpectrum = std::numeric_limits<double>::infinity();

// Number of modes with gamma_j^2 <= lambda0; the localized set is the prefix
// {0, ..., count-1}.
std::size_t localized_count(const SpectralData& spec, double lambda0);
std::vector<std::size_t> localized_modes(const SpectralData& spec, double lambda0);

// Relative gap tolerance below which two eigenvalues count as degenerate.
inline constexpr double kDegeneracyTolerance = 1e-12;

struct EigencorrelatorValue {
  double value = 0.0;
  bool degenerate = false;  // the localized spectrum has a gap below tolerance
};

// Q_s(x, y) = sum_{j in S} gamma_j^s |phi_j(x)| |phi_j(y)|, s in {-1, 0, 1}.
EigencorrelatorValue eigencorrelator(const SpectralData& spec, double lambda0, int power,
                                     SiteIndex x, SiteIndex y);

// True if some pair of consecutive eigenvalues among the first `count` modes is
// closer than kDegeneracyTolerance * ||h||.
bool has_degenerate_gap(const SpectralData& spec, std::size_t count);

// min_j (gamma_{j+1}^2 - gamma_j^2); +inf for a single mode.
double min_gap(const SpectralData& spec);

}  // namespace osc
