#include "osclab/kernels.hpp"

#include "osclab/alpha_family.hpp"
#include "osclab/eigensolver.hpp"
#include "osclab/errors.hpp"
#include "osclab/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace osc {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Row x of V applied to a delta: F_j = phi_j(x) (Re a gamma_j^{-1/2} + i Im a gamma_j^{1/2}).
Eigen::VectorXcd delta_modes(const SpectralData& spec, SiteIndex x, Complex a) {
  if (x >= spec.size()) throw std::invalid_argument("site outside box");
  const auto xi = static_cast<Eigen::Index>(x);
  Eigen::VectorXcd out(spec.gammas.size());
  for (Eigen::Index j = 0; j < out.size(); ++j) {
    const double s = std::sqrt(spec.gammas(j));
    out(j) = spec.modes(xi, j) * Complex(a.real() / s, a.imag() * s);
  }
  return out;
}

// E(i, j) = e^{-2i t_i gamma_j} for the first `count` modes.
Eigen::MatrixXcd phase_table(const SpectralData& spec, std::size_t count, const TimeGrid& grid) {
  const auto c = static_cast<Eigen::Index>(count);
  Eigen::MatrixXcd e(static_cast<Eigen::Index>(grid.times.size()), c);
  for (Eigen::Index i = 0; i < e.rows(); ++i) {
    const double t = grid.times[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < c; ++j) e(i, j) = std::polar(1.0, -2.0 * t * spec.gammas(j));
  }
  return e;
}

double tail_norm2(const Eigen::VectorXcd& v, std::size_t count) {
  return v.tail(v.size() - static_cast<Eigen::Index>(count)).squaredNorm();
}

void require_modes(const SpectralData& spec) {
  if (!spec.has_modes()) throw std::invalid_argument("kernel needs eigenvectors");
  if (spec.size() > 0 && !(spec.eigenvalues(0) > 0.0)) {
    throw std::invalid_argument("kernel needs a positive definite h");
  }
}

bool exceeds(double value, double bound) {
  return value > bound * (1.0 + kViolationRelTol) + kViolationAbsTol;
}

const char* correlator_name(int power) {
  switch (power) {
    case -1: return "q_minus1";
    case 0: return "q_0";
    default: return "q_plus1";
  }
}

// Looks up layout slots by (quantity, key).
class Recorder {
 public:
  explicit Recorder(const std::vector<SlotKey>& layout) : record_() {
    record_.values.assign(layout.size(), kNaN);
    for (std::size_t i = 0; i < layout.size(); ++i) index_[{layout[i].quantity, layout[i].key}] = i;
  }
  void set(const std::string& quantity, double key, double value) {
    const auto it = index_.find({quantity, key});
    if (it == index_.end()) throw std::logic_error("no result slot for " + quantity);
    record_.values[it->second] = value;
  }
  void count(const std::string& name, double amount = 1.0) { record_.counters[name] += amount; }
  void touch(const std::string& name) { record_.counters.try_emplace(name, 0.0); }
  SampleRecord take() { return std::move(record_); }

 private:
  SampleRecord record_;
  std::map<std::pair<std::string, double>, std::size_t> index_;
};

struct Shells {
  std::vector<SiteIndex> sites;       // all partner sites, shell after shell
  std::vector<std::size_t> offsets;   // shell d occupies [offsets[k], offsets[k+1])
};

Shells collect_shells(const ExperimentConfig& cfg) {
  Shells out;
  out.offsets.push_back(0);
  for (int d = cfg.shell_min; d <= cfg.shell_max; ++d) {
    const auto s = shell_sites(cfg.box, cfg.center_site(), d);
    out.sites.insert(out.sites.end(), s.begin(), s.end());
    out.offsets.push_back(out.sites.size());
  }
  return out;
}

struct Prepared {
  SpectralData spec;
  std::size_t count = 0;
  TimeGrid grid;
};

Prepared prepare(const ExperimentConfig& cfg, std::uint64_t index, Recorder& rec, bool need_grid) {
  Prepared p;
  const DisorderSample sample = sample_disorder(cfg.disorder, cfg.box, index);
  p.spec = diagonalize(assemble(cfg.box, sample), BoundaryCondition::neumann, true);
  p.count = localized_count(p.spec, cfg.lambda0);
  rec.touch("degenerate_samples");
  if (has_degenerate_gap(p.spec, p.count)) rec.count("degenerate_samples");
  if (need_grid) p.grid = sample_time_grid(cfg, p.spec);
  return p;
}

void run_lr_bound(const ExperimentConfig& cfg, std::uint64_t index, Recorder& rec) {
  const Prepared p = prepare(cfg, index, rec, true);
  const Shells shells = collect_shells(cfg);
  const SiteIndex x = cfg.center_site();
  const Eigen::MatrixXd norms =
      lr_norm_grid(p.spec, cfg.lambda0, x, cfg.amplitude_f, shells.sites, cfg.amplitude_g, p.grid);
  rec.touch("lr_violations");
  for (int d = cfg.shell_min; d <= cfg.shell_max; ++d) {
    const auto k = static_cast<std::size_t>(d - cfg.shell_min);
    const std::size_t lo = shells.offsets[k];
    const std::size_t hi = shells.offsets[k + 1];
    if (lo == hi) continue;
    double sup_sum = 0.0;
    double env_sum = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double sup = norms.col(static_cast<Eigen::Index>(i)).maxCoeff();
      const double env =
          lr_envelope(p.spec, cfg.lambda0, x, cfg.amplitude_f, shells.sites[i], cfg.amplitude_g);
      if (exceeds(sup, env)) rec.count("lr_violations");
      sup_sum += sup;
      env_sum += env;
    }
    const double n = static_cast<double>(hi - lo);
    rec.set("lr_sup", d, sup_sum / n);
    rec.set("lr_envelope", d, env_sum / n);
  }
}

void run_pq_bound(const ExperimentConfig& cfg, std::uint64_t index, Recorder& rec) {
  const Prepared p = prepare(cfg, index, rec, true);
  const Shells shells = collect_shells(cfg);
  const SiteIndex x = cfg.center_site();
  const auto entries = pq_grid(p.spec, cfg.lambda0, x, shells.sites, p.grid);
  static const char* sup_names[4] = {"pq_qq_sup", "pq_qp_sup", "pq_pq_sup", "pq_pp_sup"};
  rec.touch("pq_violations");
  for (int d = cfg.shell_min; d <= cfg.shell_max; ++d) {
    const auto k = static_cast<std::size_t>(d - cfg.shell_min);
    const std::size_t lo = shells.offsets[k];
    const std::size_t hi = shells.offsets[k + 1];
    if (lo == hi) continue;
    double sups[4] = {0, 0, 0, 0};
    double envs[3] = {0, 0, 0};
    for (std::size_t i = lo; i < hi; ++i) {
      const Eigen::Matrix2d env = pq_commutator_envelope(p.spec, cfg.lambda0, x, shells.sites[i]);
      const double bounds[4] = {env(0, 0), env(0, 1), env(1, 0), env(1, 1)};
      for (int e = 0; e < 4; ++e) {
        const double sup = entries[e].col(static_cast<Eigen::Index>(i)).cwiseAbs().maxCoeff();
        if (exceeds(sup, bounds[e])) rec.count("pq_violations");
        sups[e] += sup;
      }
      envs[0] += env(0, 0);
      envs[1] += env(0, 1);
      envs[2] += env(1, 1);
    }
    const double n = static_cast<double>(hi - lo);
    for (int e = 0; e < 4; ++e) rec.set(sup_names[e], d, sups[e] / n);
    rec.set("q_minus1", d, envs[0] / n);
    rec.set("q_0", d, envs[1] / n);
    rec.set("q_plus1", d, envs[2] / n);
  }
}

std::vector<std::size_t> displaced_modes(const std::vector<Eigen::VectorXcd>& vectors) {
  std::vector<std::size_t> out;
  if (vectors.empty()) return out;
  for (Eigen::Index j = 0; j < vectors.front().size(); ++j) {
    for (const auto& v : vectors) {
      if (v(j) != Complex(0.0)) {
        out.push_back(static_cast<std::size_t>(j));
        break;
      }
    }
  }
  return out;
}

std::vector<OccupationVector> family_for(const ExperimentConfig& cfg, std::uint64_t index,
                                         const Prepared& p,
                                         const std::vector<Eigen::VectorXcd>& displacements) {
  auto engine = make_stream(cfg.seed(), index, StreamTag::alpha_family);
  return sup_alpha_strategy(cfg.kappa, p.spec.size(), p.count, displaced_modes(displacements),
                            cfg.alpha_family, engine);
}

void run_quasi_locality(const ExperimentConfig& cfg, std::uint64_t index, Recorder& rec) {
  const Prepared p = prepare(cfg, index, rec, true);
  const SiteIndex x = cfg.center_site();
  const auto family = family_for(cfg, index, p, {delta_modes(p.spec, x, cfg.amplitude_f)});
  const QuasiLocalityGrid ql = quasi_locality_grid(p.spec, cfg.box, cfg.lambda0, x, cfg.amplitude_f,
                                                   cfg.n_min, cfg.n_max, p.grid, family);
  rec.touch("ql_violations");
  const double bound_factor = std::sqrt(2.0 * (cfg.kappa + 1.0));
  for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
    const auto row = static_cast<Eigen::Index>(n - cfg.n_min);
    double sup_error = 0.0;
    for (std::size_t a = 0; a < family.size(); ++a) {
      const double own_factor = std::sqrt(2.0 * (family[a].max_occupation() + 1.0));
      for (Eigen::Index i = 0; i < ql.errors[a].cols(); ++i) {
        const double e = ql.errors[a](row, i);
        if (exceeds(e, own_factor * ql.remainder_norm(row, i))) rec.count("ql_violations");
        sup_error = std::max(sup_error, e);
      }
    }
    rec.set("ql_error", n, sup_error);
    rec.set("ql_bound", n, bound_factor * ql.remainder_norm.row(row).maxCoeff());
  }
}

void run_correlations(const ExperimentConfig& cfg, std::uint64_t index, Recorder& rec) {
  const Prepared p = prepare(cfg, index, rec, true);
  const Shells shells = collect_shells(cfg);
  const SiteIndex x = cfg.center_site();
  std::vector<Eigen::VectorXcd> displacements = {delta_modes(p.spec, x, cfg.amplitude_f)};
  for (SiteIndex y : shells.sites) displacements.push_back(delta_modes(p.spec, y, cfg.amplitude_g));
  const auto family = family_for(cfg, index, p, displacements);

  Eigen::VectorXd sup = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(shells.sites.size()));
  rec.touch("correlation_violations");
  for (const auto& alpha : family) {
    const Eigen::MatrixXcd c = correlation_grid(p.spec, cfg.lambda0, alpha, x, cfg.amplitude_f,
                                                shells.sites, cfg.amplitude_g, p.grid);
    const Eigen::MatrixXd mag = c.cwiseAbs();
    for (Eigen::Index i = 0; i < mag.cols(); ++i) {
      const double m = mag.col(i).maxCoeff();
      if (m > 2.0 * (1.0 + kViolationRelTol)) rec.count("correlation_violations");
      sup(i) = std::max(sup(i), m);
    }
  }
  for (int d = cfg.shell_min; d <= cfg.shell_max; ++d) {
    const auto k = static_cast<std::size_t>(d - cfg.shell_min);
    const auto lo = static_cast<Eigen::Index>(shells.offsets[k]);
    const auto hi = static_cast<Eigen::Index>(shells.offsets[k + 1]);
    if (lo == hi) continue;
    rec.set("correlation_sup", d, sup.segment(lo, hi - lo).mean());
  }
}

std::size_t box_boundary_size(const BoxGeometry& box) {
  std::size_t n = 0;
  for (SiteIndex x = 0; x < box.size(); ++x) {
    if (box.degree(x) < 2 * box.dimension()) ++n;
  }
  return n;
}

void run_energy_density(const ExperimentConfig& cfg, std::uint64_t index, Recorder& rec) {
  rec.touch("density_order_violations");
  rec.touch("counting_violations");
  for (int side : cfg.ladder) {
    const BoxGeometry box = BoxGeometry::cube(cfg.box.dimension(), side);
    const DisorderSample sample = sample_disorder(cfg.disorder, box, index);
    const SpectralData neumann =
        diagonalize(assemble(box, sample, BoundaryCondition::neumann), BoundaryCondition::neumann, false);
    const SpectralData dirichlet = diagonalize(assemble(box, sample, BoundaryCondition::dirichlet),
                                               BoundaryCondition::dirichlet, false);
    const double dn = excitation_energy_density(neumann, cfg.lambda0, cfg.kappa);
    const double dd = excitation_energy_density(dirichlet, cfg.lambda0, cfg.kappa);
    rec.set("density_neumann", side, dn);
    rec.set("density_dirichlet", side, dd);
    rec.set("density_gap", side, dn - dd);
    const std::string suffix = "_L" + std::to_string(side);
    rec.touch("density_order_violations" + suffix);
    if (dn < dd) {
      rec.count("density_order_violations");
      rec.count("density_order_violations" + suffix);
    }

    const double top = std::max(neumann.norm(), dirichlet.norm()) + 1.0;
    std::vector<double> lambdas(cfg.lambda_grid_points);
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      lambdas[i] = top * static_cast<double>(i) / static_cast<double>(lambdas.size() - 1);
    }
    const auto nn = counting_function(neumann, lambdas);
    const auto nd = counting_function(dirichlet, lambdas);
    const auto boundary_sites = static_cast<long>(box_boundary_size(box));
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      const long diff = static_cast<long>(nn[i]) - static_cast<long>(nd[i]);
      if (diff < 0 || diff > boundary_sites) rec.count("counting_violations");
    }
  }
}

void run_eigencorrelator(const ExperimentConfig& cfg, std::uint64_t index, Recorder& rec) {
  const Prepared p = prepare(cfg, index, rec, false);
  const Shells shells = collect_shells(cfg);
  const SiteIndex x = cfg.center_site();
  for (int d = cfg.shell_min; d <= cfg.shell_max; ++d) {
    const auto k = static_cast<std::size_t>(d - cfg.shell_min);
    const std::size_t lo = shells.offsets[k];
    const std::size_t hi = shells.offsets[k + 1];
    if (lo == hi) continue;
    for (int s : cfg.powers) {
      double sum = 0.0;
      for (std::size_t i = lo; i < hi; ++i) sum += eigencorrelator(p.spec, cfg.lambda0, s, x, shells.sites[i]).value;
      rec.set(correlator_name(s), d, sum / static_cast<double>(hi - lo));
    }
  }
}

double many_body_min_gap(const SpectralData& spec, unsigned max_occupation) {
  const std::size_t n = spec.size();
  std::size_t total = 1;
  for (std::size_t j = 0; j < n; ++j) total *= max_occupation + 1;
  std::vector<double> energies;
  energies.reserve(total);
  OccupationVector alpha = OccupationVector::zeros(n);
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t rest = i;
    for (std::size_t j = 0; j < n; ++j) {
      alpha.counts[j] = static_cast<unsigned>(rest % (max_occupation + 1));
      rest /= max_occupation + 1;
    }
    energies.push_back(many_body_energy(spec, alpha));
  }
  std::sort(energies.begin(), energies.end());
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < energies.size(); ++i) gap = std::min(gap, energies[i] - energies[i - 1]);
  return gap;
}

void run_gap_stats(const ExperimentConfig& cfg, std::uint64_t index, Recorder& rec) {
  const DisorderSample sample = sample_disorder(cfg.disorder, cfg.box, index);
  const SpectralData spec = diagonalize(assemble(cfg.box, sample), BoundaryCondition::neumann, false);
  const double size = static_cast<double>(cfg.box.size());
  const double gap = min_gap(spec);
  rec.touch("one_body_gap_violations");
  rec.touch("many_body_gap_violations");
  if (std::isfinite(gap)) {
    rec.set("min_gap", size, gap);
    rec.set("relative_min_gap", size, gap / spec.norm());
    if (!(gap > 1e-12 * spec.norm())) rec.count("one_body_gap_violations");
  }

  const DisorderSample mb_sample = sample_disorder(cfg.disorder, cfg.many_body_box, index);
  const SpectralData mb =
      diagonalize(assemble(cfg.many_body_box, mb_sample), BoundaryCondition::neumann, false);
  const double mb_gap = many_body_min_gap(mb, cfg.many_body_max_occupation);
  if (std::isfinite(mb_gap)) {
    rec.set("many_body_min_gap", static_cast<double>(cfg.many_body_box.size()), mb_gap);
    if (!(mb_gap > 1e-10)) rec.count("many_body_gap_violations");
  }
}

void add_shell_slots(const ExperimentConfig& cfg, const std::string& quantity,
                     std::vector<SlotKey>& out) {
  for (int d = cfg.shell_min; d <= cfg.shell_max; ++d) out.push_back({quantity, "distance", double(d)});
}

}  // namespace

std::vector<SiteIndex> shell_sites(const BoxGeometry& box, SiteIndex center, int d) {
  std::vector<SiteIndex> out;
  for (SiteIndex y = 0; y < box.size(); ++y) {
    if (box.l1_distance(center, y) == d) out.push_back(y);
  }
  return out;
}

TimeGrid sample_time_grid(const ExperimentConfig& cfg, const SpectralData& spec) {
  if (cfg.t_max) return TimeGrid::uniform(*cfg.t_max, cfg.time_points);
  return default_time_grid(spec, cfg.time_points);
}

Eigen::MatrixXd lr_norm_grid(const SpectralData& spec, double lambda0, SiteIndex x, Complex a_f,
                             const std::vector<SiteIndex>& ys, Complex a_g, const TimeGrid& grid) {
  require_modes(spec);
  const std::size_t count = localized_count(spec, lambda0);
  const auto c = static_cast<Eigen::Index>(count);
  const auto np = static_cast<Eigen::Index>(ys.size());
  const Eigen::VectorXcd f = delta_modes(spec, x, a_f);
  const double f_tail = tail_norm2(f, count);

  Eigen::MatrixXcd pair(c, np);
  Eigen::VectorXd constant(np);
  for (Eigen::Index k = 0; k < np; ++k) {
    const Eigen::VectorXcd g = delta_modes(spec, ys[static_cast<std::size_t>(k)], a_g);
    pair.col(k) = f.head(c).conjugate().cwiseProduct(g.head(c));
    constant(k) = std::exp(-0.25 * (f_tail + tail_norm2(g, count)));
  }
  // <eta_t, xi> for every (t, y) at once.
  const Eigen::MatrixXcd inner_products = phase_table(spec, count, grid) * pair;
  Eigen::MatrixXd out(inner_products.rows(), np);
  for (Eigen::Index k = 0; k < np; ++k) {
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      out(i, k) = constant(k) * 2.0 * std::abs(std::sin(0.5 * inner_products(i, k).imag()));
    }
  }
  return out;
}

double lr_envelope(const SpectralData& spec, double lambda0, SiteIndex x, Complex a_f, SiteIndex y,
                   Complex a_g) {
  const double q_minus = eigencorrelator(spec, lambda0, -1, x, y).value;
  const double q_zero = eigencorrelator(spec, lambda0, 0, x, y).value;
  const double q_plus = eigencorrelator(spec, lambda0, 1, x, y).value;
  const double fr = std::abs(a_f.real()), fi = std::abs(a_f.imag());
  const double gr = std::abs(a_g.real()), gi = std::abs(a_g.imag());
  return fr * gi * q_zero + fi * gr * q_zero + fr * gr * q_minus + fi * gi * q_plus;
}

std::array<Eigen::MatrixXd, 4> pq_grid(const SpectralData& spec, double lambda0, SiteIndex x,
                                       const std::vector<SiteIndex>& ys, const TimeGrid& grid) {
  require_modes(spec);
  if (x >= spec.size()) throw std::invalid_argument("pq_grid: site outside box");
  const auto c = static_cast<Eigen::Index>(localized_count(spec, lambda0));
  const auto np = static_cast<Eigen::Index>(ys.size());
  const auto nt = static_cast<Eigen::Index>(grid.times.size());

  Eigen::MatrixXd weights(c, np);
  for (Eigen::Index k = 0; k < np; ++k) {
    const auto y = ys[static_cast<std::size_t>(k)];
    if (y >= spec.size()) throw std::invalid_argument("pq_grid: site outside box");
    weights.col(k) = spec.modes.row(static_cast<Eigen::Index>(x)).head(c).transpose().cwiseProduct(
        spec.modes.row(static_cast<Eigen::Index>(y)).head(c).transpose());
  }
  Eigen::MatrixXd sines(nt, c), cosines(nt, c);
  for (Eigen::Index i = 0; i < nt; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) {
      const double arg = 2.0 * grid.times[static_cast<std::size_t>(i)] * spec.gammas(j);
      sines(i, j) = std::sin(arg);
      cosines(i, j) = std::cos(arg);
    }
  }
  const Eigen::VectorXd gam = spec.gammas.head(c);
  std::array<Eigen::MatrixXd, 4> out;
  out[0] = -(sines * gam.cwiseInverse().asDiagonal() * weights);
  out[1] = cosines * weights;
  out[2] = -out[1];
  out[3] = -(sines * gam.asDiagonal() * weights);
  return out;
}

Eigen::MatrixXcd correlation_grid(const SpectralData& spec, double lambda0,
                                  const OccupationVector& alpha, SiteIndex x, Complex a_f,
                                  const std::vector<SiteIndex>& ys, Complex a_g,
                                  const TimeGrid& grid) {
  require_modes(spec);
  const std::size_t count = localized_count(spec, lambda0);
  if (alpha.size() != spec.size() || !alpha.supported_in_prefix(count)) {
    throw std::invalid_argument("correlation_grid: occupation vector outside the localized modes");
  }
  const auto c = static_cast<Eigen::Index>(count);
  const auto np = static_cast<Eigen::Index>(ys.size());
  std::vector<Eigen::Index> occupied;
  for (Eigen::Index j = 0; j < c; ++j) {
    if (alpha.counts[static_cast<std::size_t>(j)] != 0) occupied.push_back(j);
  }
  auto separate_factor = [&](const Eigen::VectorXcd& z) {
    double v = std::exp(-0.25 * z.head(c).squaredNorm());
    for (Eigen::Index j : occupied) {
      v *= laguerre(alpha.counts[static_cast<std::size_t>(j)], 0, 0.5 * std::norm(z(j)));
    }
    return v;
  };

  const Eigen::VectorXcd f = delta_modes(spec, x, a_f);
  const double f_tail = tail_norm2(f, count);
  const double f_head = f.head(c).squaredNorm();
  const double f_diag = separate_factor(f);
  const Eigen::MatrixXcd phases = phase_table(spec, count, grid);

  Eigen::MatrixXcd out(phases.rows(), np);
  for (Eigen::Index k = 0; k < np; ++k) {
    const Eigen::VectorXcd g = delta_modes(spec, ys[static_cast<std::size_t>(k)], a_g);
    const double constant = std::exp(-0.25 * (f_tail + tail_norm2(g, count)));
    const double separate = f_diag * separate_factor(g);
    const double g_head = g.head(c).squaredNorm();
    const Eigen::VectorXcd pair = f.head(c).conjugate().cwiseProduct(g.head(c));
    const Eigen::VectorXcd inner_products = phases * pair;
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      const Complex ip = inner_products(i);
      double joint = std::exp(-0.25 * (f_head + g_head + 2.0 * ip.real()));
      for (Eigen::Index j : occupied) {
        // |e^{2it gamma} F_j + G_j|^2
        const double m2 = std::norm(f(j)) + std::norm(g(j)) + 2.0 * (phases(i, j) * pair(j)).real();
        joint *= laguerre(alpha.counts[static_cast<std::size_t>(j)], 0, 0.5 * m2);
      }
      out(i, k) = constant * (std::polar(joint, -0.5 * ip.imag()) - separate);
    }
  }
  return out;
}

QuasiLocalityGrid quasi_locality_grid(const SpectralData& spec, const BoxGeometry& box,
                                      double lambda0, SiteIndex x, Complex a_f, int n_min,
                                      int n_max, const TimeGrid& grid,
                                      const std::vector<OccupationVector>& family) {
  require_modes(spec);
  if (box.size() != spec.size()) throw std::invalid_argument("quasi_locality_grid: box mismatch");
  if (n_min < 0 || n_max < n_min) throw std::invalid_argument("quasi_locality_grid: bad n range");
  const std::size_t count = localized_count(spec, lambda0);
  for (const auto& alpha : family) {
    if (alpha.size() != spec.size() || !alpha.supported_in_prefix(count)) {
      throw std::invalid_argument("quasi_locality_grid: occupation vector outside the localized modes");
    }
  }
  const auto c = static_cast<Eigen::Index>(count);
  const auto nt = static_cast<Eigen::Index>(grid.times.size());
  const auto rows = static_cast<Eigen::Index>(n_max - n_min + 1);

  const Eigen::VectorXcd f = delta_modes(spec, x, a_f);
  const double restriction = std::exp(-0.25 * tail_norm2(f, count));
  const Eigen::VectorXd root = spec.gammas.head(c).cwiseSqrt();

  // eta(j, t) = e^{2it gamma_j} F_j, and the field X f_t split into parts.
  const Eigen::MatrixXcd eta_cols =
      f.head(c).asDiagonal() * phase_table(spec, count, grid).transpose().conjugate();  // c x T
  const auto basis = spec.modes.leftCols(c);
  const Eigen::MatrixXd re_field = basis * root.asDiagonal() * eta_cols.real();
  const Eigen::MatrixXd im_field = basis * root.cwiseInverse().asDiagonal() * eta_cols.imag();

  std::vector<int> dist = distance_to_set(box, SiteSet::single(x));
  std::vector<SiteIndex> order(box.size());
  std::iota(order.begin(), order.end(), SiteIndex{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](SiteIndex a, SiteIndex b) { return dist[a] < dist[b]; });

  QuasiLocalityGrid out;
  out.n_min = n_min;
  out.remainder_norm.resize(rows, nt);
  out.errors.assign(family.size(), Eigen::MatrixXd(rows, nt));

  std::vector<std::vector<std::pair<Eigen::Index, unsigned>>> occupied(family.size());
  for (std::size_t a = 0; a < family.size(); ++a) {
    for (Eigen::Index j = 0; j < c; ++j) {
      const unsigned occ = family[a].counts[static_cast<std::size_t>(j)];
      if (occ != 0) occupied[a].emplace_back(j, occ);
    }
  }

  // Mode-space contributions of the sites already inside the neighborhood.
  Eigen::MatrixXd inside_re = Eigen::MatrixXd::Zero(c, nt);
  Eigen::MatrixXd inside_im = Eigen::MatrixXd::Zero(c, nt);
  std::size_t next = 0;
  for (int n = n_min; n <= n_max; ++n) {
    while (next < order.size() && dist[order[next]] <= n) {
      const auto s = static_cast<Eigen::Index>(order[next]);
      inside_re.noalias() += basis.row(s).transpose() * re_field.row(s);
      inside_im.noalias() += basis.row(s).transpose() * im_field.row(s);
      ++next;
    }
    const auto row = static_cast<Eigen::Index>(n - n_min);
    for (Eigen::Index i = 0; i < nt; ++i) {
      Eigen::VectorXcd z(c);
      for (Eigen::Index j = 0; j < c; ++j) {
        z(j) = eta_cols(j, i) - Complex(inside_re(j, i) / root(j), inside_im(j, i) * root(j));
      }
      const double norm2 = z.squaredNorm();
      out.remainder_norm(row, i) = std::sqrt(norm2);
      const double base = std::expm1(-0.25 * norm2);
      for (std::size_t a = 0; a < family.size(); ++a) {
        double acc = base;
        for (const auto& [j, occ] : occupied[a]) {
          const double u = laguerre_minus_one(occ, 0.5 * std::norm(z(j)));
          acc = acc + u + acc * u;
        }
        out.errors[a](row, i) = restriction * std::sqrt(std::max(0.0, -2.0 * acc));
      }
    }
  }
  return out;
}

std::vector<SlotKey> result_layout(const ExperimentConfig& cfg) {
  std::vector<SlotKey> out;
  switch (cfg.kind) {
    case ExperimentKind::lr_bound:
      add_shell_slots(cfg, "lr_sup", out);
      add_shell_slots(cfg, "lr_envelope", out);
      break;
    case ExperimentKind::pq_bound:
      for (const char* q : {"pq_qq_sup", "pq_qp_sup", "pq_pq_sup", "pq_pp_sup", "q_minus1", "q_0", "q_plus1"}) {
        add_shell_slots(cfg, q, out);
      }
      break;
    case ExperimentKind::quasi_locality:
      for (const char* q : {"ql_error", "ql_bound"}) {
        for (int n = cfg.n_min; n <= cfg.n_max; ++n) out.push_back({q, "n", double(n)});
      }
      break;
    case ExperimentKind::correlations:
      add_shell_slots(cfg, "correlation_sup", out);
      break;
    case ExperimentKind::energy_density:
      for (const char* q : {"density_neumann", "density_dirichlet", "density_gap"}) {
        for (int side : cfg.ladder) out.push_back({q, "L", double(side)});
      }
      break;
    case ExperimentKind::eigencorrelator:
      for (int s : cfg.powers) add_shell_slots(cfg, correlator_name(s), out);
      break;
    case ExperimentKind::gap_stats:
      out.push_back({"min_gap", "sites", double(cfg.box.size())});
      out.push_back({"relative_min_gap", "sites", double(cfg.box.size())});
      out.push_back({"many_body_min_gap", "sites", double(cfg.many_body_box.size())});
      break;
    case ExperimentKind::oracle_check:
      throw std::invalid_argument("oracle-check has no per-sample layout");
  }
  return out;
}

SampleRecord evaluate_sample(const ExperimentConfig& cfg, std::uint64_t index) {
  Recorder rec(result_layout(cfg));
  switch (cfg.kind) {
    case ExperimentKind::lr_bound: run_lr_bound(cfg, index, rec); break;
    case ExperimentKind::pq_bound: run_pq_bound(cfg, index, rec); break;
    case ExperimentKind::quasi_locality: run_quasi_locality(cfg, index, rec); break;
    case ExperimentKind::correlations: run_correlations(cfg, index, rec); break;
    case ExperimentKind::energy_density: run_energy_density(cfg, index, rec); break;
    case ExperimentKind::eigencorrelator: run_eigencorrelator(cfg, index, rec); break;
    case ExperimentKind::gap_stats: run_gap_stats(cfg, index, rec); break;
    case ExperimentKind::oracle_check:
      throw std::invalid_argument("oracle-check is not a disorder ensemble");
  }
  return rec.take();
}

}  // namespace osc
