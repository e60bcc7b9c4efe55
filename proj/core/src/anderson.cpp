#include "osclab/anderson.hpp"

#include "osclab/eigensolver.hpp"
#include "osclab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace osc {

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t index, StreamTag tag) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    static_cast<std::uint32_t>(tag)};
  return std::mt19937_64(seq);
}

void DisorderConfig::validate() const {
  if (!(k_max > 0.0) || !std::isfinite(k_max)) {
    throw ConfigError("disorder: k_max must be a positive finite number");
  }
  if (inverse_cdf.empty()) return;
  if (inverse_cdf.size() < 2) {
    throw ConfigError("disorder: inverse_cdf table needs at least two quantiles");
  }
  for (std::size_t i = 0; i < inverse_cdf.size(); ++i) {
    const double q = inverse_cdf[i];
    if (!std::isfinite(q) || q < 0.0 || q > k_max) {
      throw ConfigError("disorder: inverse_cdf entry " + std::to_string(i) +
                        " outside [0, k_max]");
    }
    if (i > 0 && q < inverse_cdf[i - 1]) {
      throw ConfigError("disorder: inverse_cdf table is not monotone at entry " +
                        std::to_string(i));
    }
  }
  if (inverse_cdf.back() <= 0.0) {
    throw ConfigError("disorder: inverse_cdf table is identically zero");
  }
}

namespace {

double draw(const DisorderConfig& config, std::mt19937_64& engine) {
  const double u = uniform01(engine);
  if (config.inverse_cdf.empty()) return config.k_max * u;
  const auto& table = config.inverse_cdf;
  const double pos = u * static_cast<double>(table.size() - 1);
  const auto i = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(i);
  return table[i] + frac * (table[i + 1] - table[i]);
}

}  // namespace

DisorderSample sample_disorder(const DisorderConfig& config, const BoxGeometry& box,
                               std::uint64_t index) {
  config.validate();
  auto engine = make_stream(config.master_seed, index, StreamTag::disorder);
  DisorderSample out;
  out.index = index;
  out.k.resize(static_cast<Eigen::Index>(box.size()));
  for (Eigen::Index x = 0; x < out.k.size(); ++x) {
    double k = 0.0;
    while (k <= 0.0) k = draw(config, engine);
    out.k(x) = k;
  }
  return out;
}

Eigen::MatrixXd assemble(const BoxGeometry& box, const DisorderSample& sample,
                         BoundaryCondition bc) {
  if (static_cast<std::size_t>(sample.k.size()) != box.size()) {
    throw std::invalid_argument("assemble: disorder sample has " +
                                std::to_string(sample.k.size()) + " entries, box has " +
                                std::to_string(box.size()) + " sites");
  }
  Eigen::MatrixXd h = laplacian(box, bc);
  h.diagonal() += sample.k;
  return h;
}

double SpectralData::norm() const noexcept {
  if (eigenvalues.size() == 0) return 0.0;
  return std::max(std::abs(eigenvalues(0)), std::abs(eigenvalues(eigenvalues.size() - 1)));
}

SpectralData diagonalize(const Eigen::MatrixXd& h, BoundaryCondition bc, bool compute_modes) {
  auto eig = symmetric_eigen(h, compute_modes);
  SpectralData out;
  out.bc = bc;
  out.eigenvalues = std::move(eig.eigenvalues);
  out.gammas = out.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  out.modes = std::move(eig.eigenvectors);
  return out;
}

double reconstruction_error(const SpectralData& spec, const Eigen::MatrixXd& h) {
  if (!spec.has_modes()) throw std::invalid_argument("reconstruction_error: no modes stored");
  const Eigen::MatrixXd rebuilt =
      spec.modes * spec.eigenvalues.asDiagonal() * spec.modes.transpose();
  return (rebuilt - h).cwiseAbs().maxCoeff();
}

std::size_t localized_count(const SpectralData& spec, double lambda0) {
  const auto* begin = spec.eigenvalues.data();
  const auto* end = begin + spec.eigenvalues.size();
  return static_cast<std::size_t>(std::upper_bound(begin, end, lambda0) - begin);
}

std::vector<std::size_t> localized_modes(const SpectralData& spec, double lambda0) {
  std::vector<std::size_t> out(localized_count(spec, lambda0));
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = j;
  return out;
}

bool has_degenerate_gap(const SpectralData& spec, std::size_t count) {
  const double tol = kDegeneracyTolerance * spec.norm();
  count = std::min(count, spec.size());
  for (std::size_t j = 1; j < count; ++j) {
    const auto i = static_cast<Eigen::Index>(j);
    if (spec.eigenvalues(i) - spec.eigenvalues(i - 1) <= tol) return true;
  }
  return false;
}

EigencorrelatorValue eigencorrelator(const SpectralData& spec, double lambda0, int power,
                                     SiteIndex x, SiteIndex y) {
  if (power < -1 || power > 1) {
    throw std::invalid_argument("eigencorrelator: power must be -1, 0 or 1");
  }
  if (!spec.has_modes()) throw std::invalid_argument("eigencorrelator: no modes stored");
  if (x >= spec.size() || y >= spec.size()) {
    throw std::invalid_argument("eigencorrelator: site index out of range");
  }
  const std::size_t count = localized_count(spec, lambda0);
  EigencorrelatorValue out;
  out.degenerate = has_degenerate_gap(spec, count);
  const auto xi = static_cast<Eigen::Index>(x);
  const auto yi = static_cast<Eigen::Index>(y);
  for (std::size_t jj = 0; jj < count; ++jj) {
    const auto j = static_cast<Eigen::Index>(jj);
    double weight = 1.0;
    if (power == -1) weight = 1.0 / spec.gammas(j);
    if (power == 1) weight = spec.gammas(j);
    out.value += weight * std::abs(spec.modes(xi, j)) * std::abs(spec.modes(yi, j));
  }
  return out;
}

double min_gap(const SpectralData& spec) {
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 1; j < spec.eigenvalues.size(); ++j) {
    gap = std::min(gap, spec.eigenvalues(j) - spec.eigenvalues(j - 1));
  }
  return gap;
}

}  // namespace osc
