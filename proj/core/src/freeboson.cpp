#include "osclab/freeboson.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace osc {
namespace {

void require_modes(const SpectralData& spec, const char* where) {
  if (!spec.has_modes()) {
    throw std::invalid_argument(std::string(where) + ": spectral data carries no modes");
  }
  if (spec.size() > 0 && !(spec.eigenvalues(0) > 0.0)) {
    throw std::invalid_argument(std::string(where) + ": h must be positive definite");
  }
}

void require_size(std::size_t got, std::size_t want, const char* where) {
  if (got != want) {
    throw std::invalid_argument(std::string(where) + ": dimension mismatch (" +
                                std::to_string(got) + " vs " + std::to_string(want) + ")");
  }
}

}  // namespace

ComplexField ComplexField::delta(std::size_t n, SiteIndex x, Complex value) {
  if (x >= n) throw std::invalid_argument("ComplexField::delta: site outside field");
  ComplexField f(n);
  f[x] = value;
  return f;
}

SiteSet ComplexField::support() const {
  std::vector<SiteIndex> s;
  for (Eigen::Index x = 0; x < values.size(); ++x) {
    if (values(x) != Complex(0.0, 0.0)) s.push_back(static_cast<SiteIndex>(x));
  }
  return SiteSet(std::move(s));
}

unsigned OccupationVector::max_occupation() const noexcept {
  unsigned m = 0;
  for (unsigned c : counts) m = std::max(m, c);
  return m;
}

bool OccupationVector::supported_in_prefix(std::size_t count) const noexcept {
  for (std::size_t j = count; j < counts.size(); ++j) {
    if (counts[j] != 0) return false;
  }
  return true;
}

ModeVector v_map(const SpectralData& spec, const ComplexField& f) {
  require_modes(spec, "v_map");
  require_size(f.size(), spec.size(), "v_map");
  const Eigen::VectorXd re = spec.modes.transpose() * f.values.real();
  const Eigen::VectorXd im = spec.modes.transpose() * f.values.imag();
  ModeVector out;
  out.amplitudes.resize(re.size());
  for (Eigen::Index j = 0; j < re.size(); ++j) {
    const double s = std::sqrt(spec.gammas(j));
    out.amplitudes(j) = Complex(re(j) / s, im(j) * s);
  }
  return out;
}

ComplexField v_inverse(const SpectralData& spec, const ModeVector& g) {
  require_modes(spec, "v_inverse");
  require_size(g.size(), spec.size(), "v_inverse");
  Eigen::VectorXd re(g.amplitudes.size());
  Eigen::VectorXd im(g.amplitudes.size());
  for (Eigen::Index j = 0; j < re.size(); ++j) {
    const double s = std::sqrt(spec.gammas(j));
    re(j) = g.amplitudes(j).real() * s;
    im(j) = g.amplitudes(j).imag() / s;
  }
  ComplexField out(spec.size());
  out.values.real() = spec.modes * re;
  out.values.imag() = spec.modes * im;
  return out;
}

ModeVector rotate_modes(const SpectralData& spec, const ModeVector& g, double t) {
  require_size(g.size(), spec.size(), "rotate_modes");
  ModeVector out = g;
  for (Eigen::Index j = 0; j < out.amplitudes.size(); ++j) {
    out.amplitudes(j) *= std::polar(1.0, 2.0 * t * spec.gammas(j));
  }
  return out;
}

ModeVector mask_modes(const ModeVector& g, std::size_t count) {
  ModeVector out = g;
  const auto c = static_cast<Eigen::Index>(std::min(count, g.size()));
  out.amplitudes.tail(out.amplitudes.size() - c).setZero();
  return out;
}

ComplexField evolve(const SpectralData& spec, const ComplexField& f, double t) {
  return v_inverse(spec, rotate_modes(spec, v_map(spec, f), t));
}

ComplexField project_localized(const SpectralData& spec, double lambda0, const ComplexField& f) {
  if (!spec.has_modes()) throw std::invalid_argument("project_localized: no modes stored");
  require_size(f.size(), spec.size(), "project_localized");
  const auto count = static_cast<Eigen::Index>(localized_count(spec, lambda0));
  const auto basis = spec.modes.leftCols(count);
  ComplexField out(spec.size());
  out.values.real() = basis * (basis.transpose() * f.values.real());
  out.values.imag() = basis * (basis.transpose() * f.values.imag());
  return out;
}

ComplexField DynamicsBlocks::apply(const ComplexField& g) const {
  const Eigen::VectorXd re = g.values.real();
  const Eigen::VectorXd im = g.values.imag();
  ComplexField out(g.size());
  out.values.real() = upper_left * re + upper_right * im;
  out.values.imag() = lower_left * re + lower_right * im;
  return out;
}

DynamicsBlocks dynamics_block_matrix(const SpectralData& spec, double lambda0, double t) {
  require_modes(spec, "dynamics_block_matrix");
  const auto count = static_cast<Eigen::Index>(localized_count(spec, lambda0));
  const auto basis = spec.modes.leftCols(count);
  const Eigen::ArrayXd gamma = spec.gammas.head(count).array();
  const Eigen::ArrayXd c = (2.0 * t * gamma).cos();
  const Eigen::ArrayXd s = (2.0 * t * gamma).sin();

  auto spectral = [&](const Eigen::ArrayXd& weights) -> Eigen::MatrixXd {
    return basis * weights.matrix().asDiagonal() * basis.transpose();
  };
  DynamicsBlocks out;
  out.upper_left = spectral(c);
  out.upper_right = spectral(-s * gamma);
  out.lower_left = spectral(s / gamma);
  out.lower_right = out.upper_left;
  return out;
}

TimeGrid TimeGrid::uniform(double t_max, std::size_t points) {
  if (points == 0) throw std::invalid_argument("TimeGrid: need at least one point");
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) {
    throw std::invalid_argument("TimeGrid: horizon must be finite and nonnegative");
  }
  TimeGrid grid;
  grid.times.resize(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid.times[i] = points == 1 ? 0.0
                                : t_max * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return grid;
}

double default_time_horizon(const SpectralData& spec) {
  if (spec.size() == 0) throw std::invalid_argument("default_time_horizon: empty spectrum");
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 1; j < spec.gammas.size(); ++j) {
    gap = std::min(gap, spec.gammas(j) - spec.gammas(j - 1));
  }
  if (!std::isfinite(gap)) gap = spec.gammas(0);
  if (!(gap > 0.0)) throw std::invalid_argument("default_time_horizon: degenerate spectrum");
  return 4.0 * std::numbers::pi / gap;
}

TimeGrid default_time_grid(const SpectralData& spec, std::size_t points) {
  return TimeGrid::uniform(default_time_horizon(spec), points);
}

OverlapInterval sup_t_overlap(const SpectralData& spec, double lambda0, const ComplexField& f,
                              const ComplexField& g, const TimeGrid& grid) {
  require_modes(spec, "sup_t_overlap");
  require_size(f.size(), spec.size(), "sup_t_overlap");
  require_size(g.size(), spec.size(), "sup_t_overlap");
  if (grid.times.empty()) throw std::invalid_argument("sup_t_overlap: empty time grid");

  OverlapInterval out;
  const ComplexField xg = project_localized(spec, lambda0, g);
  for (double t : grid.times) {
    out.lower = std::max(out.lower, std::abs(inner(f, evolve(spec, xg, t))));
  }

  // <f, X g_t> = sum_{j in S} (P_j cos theta_j + Q_j sin theta_j), theta_j = 2 t gamma_j.
  const auto count = static_cast<Eigen::Index>(localized_count(spec, lambda0));
  const Eigen::VectorXd fr = spec.modes.transpose() * f.values.real();
  const Eigen::VectorXd fi = spec.modes.transpose() * f.values.imag();
  const Eigen::VectorXd gr = spec.modes.transpose() * g.values.real();
  const Eigen::VectorXd gi = spec.modes.transpose() * g.values.imag();
  for (Eigen::Index j = 0; j < count; ++j) {
    const double gam = spec.gammas(j);
    const Complex p(fr(j) * gr(j) + fi(j) * gi(j), fr(j) * gi(j) - fi(j) * gr(j));
    const Complex q(-gam * fr(j) * gi(j) + fi(j) * gr(j) / gam,
                    fr(j) * gr(j) / gam + gam * fi(j) * gi(j));
    const double a = std::norm(p);
    const double b = std::norm(q);
    const double c = (p * std::conj(q)).real();
    const double peak = 0.5 * (a + b) + std::hypot(0.5 * (a - b), c);
    out.upper += std::sqrt(std::max(peak, 0.0));
  }
  // The grid maximum can only exceed the envelope through rounding.
  out.upper = std::max(out.upper, out.lower);
  return out;
}

double many_body_energy(const SpectralData& spec, const OccupationVector& alpha) {
  require_size(alpha.size(), spec.size(), "many_body_energy");
  double e = 0.0;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    e += spec.gammas(static_cast<Eigen::Index>(j)) * (2.0 * alpha.counts[j] + 1.0);
  }
  return e;
}

double excitation_energy_density(const SpectralData& spec, double lambda0, unsigned kappa) {
  if (spec.size() == 0) return 0.0;
  const auto count = static_cast<Eigen::Index>(localized_count(spec, lambda0));
  return 2.0 * kappa * spec.gammas.head(count).sum() / static_cast<double>(spec.size());
}

std::vector<std::size_t> counting_function(const SpectralData& spec,
                                           const std::vector<double>& lambda_grid) {
  if (!std::is_sorted(lambda_grid.begin(), lambda_grid.end())) {
    throw std::invalid_argument("counting_function: grid must be ascending");
  }
  const auto* begin = spec.eigenvalues.data();
  const auto* end = begin + spec.eigenvalues.size();
  std::vector<std::size_t> out;
  out.reserve(lambda_grid.size());
  for (double lambda : lambda_grid) {
    out.push_back(static_cast<std::size_t>(std::lower_bound(begin, end, lambda) - begin));
  }
  return out;
}

}  // namespace osc
