#include "osclab/oracle_suite.hpp"

#include "osclab/anderson.hpp"
#include "osclab/fock_oracle.hpp"
#include "osclab/freeboson.hpp"
#include "osclab/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace osc {
namespace {

class Tracker {
 public:
  Tracker(std::string name, double tolerance) {
    check_.name = std::move(name);
    check_.tolerance = tolerance;
  }
  void add(double deviation) {
    // NaN must fail the check, so compare through !(<=).
    if (!(deviation <= check_.max_deviation)) check_.max_deviation = deviation;
    ++check_.instances;
  }
  AgreementCheck finish() {
    check_.passed = check_.instances > 0 && check_.max_deviation <= check_.tolerance;
    return check_;
  }

 private:
  AgreementCheck check_;
};

double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

ComplexField random_field(std::mt19937_64& rng, std::size_t n, double scale) {
  ComplexField f(n);
  for (SiteIndex x = 0; x < n; ++x) f[x] = Complex(uniform(rng, -scale, scale), uniform(rng, -scale, scale));
  return f;
}

// Chain with on-site potential in [0.3, 1.3]: keeps gamma_min away from zero
// so that every |Vf| stays well inside the truncation.
SpectralData random_chain(std::mt19937_64& rng, int length) {
  const BoxGeometry box = BoxGeometry::chain(length);
  DisorderSample sample;
  sample.k.resize(static_cast<Eigen::Index>(box.size()));
  for (Eigen::Index i = 0; i < sample.k.size(); ++i) sample.k(i) = uniform(rng, 0.3, 1.3);
  return diagonalize(assemble(box, sample));
}

// Either the full spectrum or a threshold between two eigenvalues.
double random_threshold(std::mt19937_64& rng, const SpectralData& spec) {
  const std::size_t count = 1 + static_cast<std::size_t>(rng() % spec.size());
  if (count == spec.size()) return kFullSpectrum;
  return 0.5 * (spec.eigenvalues(static_cast<Eigen::Index>(count - 1)) +
                spec.eigenvalues(static_cast<Eigen::Index>(count)));
}

OccupationVector random_alpha(std::mt19937_64& rng, std::size_t modes, std::size_t count, unsigned top) {
  OccupationVector alpha = OccupationVector::zeros(modes);
  for (std::size_t j = 0; j < count; ++j) alpha.counts[j] = static_cast<unsigned>(rng() % (top + 1));
  return alpha;
}

void single_mode_checks(std::vector<AgreementCheck>& out) {
  Tracker elements("matrix_element_1d_vs_oracle", 1e-8);
  Tracker vacuum("vacuum_element", 1e-12);
  Tracker rows("unitarity_rows", 1e-8);
  constexpr unsigned kTop = 10;
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) {
      const Complex z(-1.5 + 0.75 * a, -1.5 + 0.75 * b);
      const WeylOracleMatrix oracle = weyl_matrix_1d_oracle(z, 40);
      for (unsigned n = 0; n <= kTop; ++n) {
        for (unsigned k = 0; k <= kTop; ++k) {
          elements.add(std::abs(matrix_element_1d(n, k, z) -
                                oracle.matrix(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k))));
        }
        double row = 0.0;
        for (unsigned k = 0; k < 80; ++k) row += std::norm(matrix_element_1d(n, k, z));
        rows.add(std::abs(row - 1.0));
      }
      vacuum.add(std::abs(matrix_element_1d(0, 0, z) - std::exp(-0.25 * std::norm(z))));
    }
  }
  out.push_back(elements.finish());
  out.push_back(vacuum.finish());
  out.push_back(rows.finish());
}

void many_body_checks(const OracleSuiteOptions& options, std::vector<AgreementCheck>& out) {
  Tracker lr("lr_commutator_vs_oracle", 1e-6);
  Tracker pq("pq_commutator_vs_oracle", 1e-6);
  Tracker corr("dynamic_correlation_vs_oracle", 1e-6);
  Tracker ql("quasi_locality_error_vs_oracle", 1e-6);
  Tracker commute("localized_weyl_commutes_with_projection", 1e-8);
  Tracker restricted("restricted_weyl_norm", 1e-6);
  Tracker dynamics("heisenberg_weyl_vs_evolved_field", 1e-6);

  TruncationSpec trunc;
  trunc.budget = options.budget;
  auto rng = make_stream(options.seed, 0, StreamTag::test);
  constexpr int kInstances = 20;
  for (int i = 0; i < kInstances; ++i) {
    const SpectralData spec = random_chain(rng, 2);
    const double lambda0 = random_threshold(rng, spec);
    const RestrictedOperators ops(spec, lambda0, trunc);
    const std::size_t count = ops.localized_count();
    const ComplexField f = random_field(rng, 2, 0.5);
    const ComplexField g = random_field(rng, 2, 0.5);
    const double t = uniform(rng, 0.0, 3.0);
    const OccupationVector alpha = random_alpha(rng, 2, count, 2);
    const Eigen::MatrixXcd projection = ops.localized_projection();
    const Eigen::MatrixXcd cut = ops.cutoff_projection();

    const Eigen::MatrixXcd wf = ops.weyl(f);
    const Eigen::MatrixXcd wg = ops.weyl(g);
    const Eigen::MatrixXcd wf_t = ops.heisenberg(wf, t);
    lr.add(std::abs(ops.restricted_commutator_norm(wf_t, wg) -
                    lr_weyl_commutator_norm(spec, lambda0, f, g, t)));

    for (SiteIndex x = 0; x < 2; ++x) {
      for (SiteIndex y = 0; y < 2; ++y) {
        const Eigen::Matrix2d coef = pq_commutator_matrix(spec, lambda0, x, y, t);
        const Eigen::MatrixXcd as[2] = {ops.heisenberg(ops.position(x), t),
                                        ops.heisenberg(ops.momentum(x), t)};
        const Eigen::MatrixXcd bs[2] = {ops.position(y), ops.momentum(y)};
        for (int r = 0; r < 2; ++r) {
          for (int c = 0; c < 2; ++c) {
            const Eigen::MatrixXcd ai = ops.restrict(as[r]);
            const Eigen::MatrixXcd bi = ops.restrict(bs[c]);
            const Eigen::MatrixXcd diff = ai * bi - bi * ai - Complex(0.0, coef(r, c)) * projection;
            pq.add(spectral_norm(diff * cut));
          }
        }
      }
    }

    const Eigen::VectorXcd psi = ops.basis_state(alpha);
    const Eigen::MatrixXcd wf_ti = ops.restrict(wf_t);
    const Eigen::MatrixXcd wgi = ops.restrict(wg);
    const Complex oracle_corr = oracle_expectation(psi, wf_ti * wgi) -
                                oracle_expectation(psi, wf_ti) * oracle_expectation(psi, wgi);
    corr.add(std::abs(oracle_corr - dynamic_correlation(spec, lambda0, alpha, f, g, t)));

    const BoxGeometry box = BoxGeometry::chain(2);
    const SiteIndex center = static_cast<SiteIndex>(rng() % 2);
    const ComplexField fx = ComplexField::delta(2, center, f[center]);
    const SiteSet region = SiteSet::single(center);
    const double cf = restriction_constant(spec, lambda0, fx).constant;
    const ComplexField localized = project_localized(spec, lambda0, evolve(spec, fx, t));
    const ComplexField remainder = localized_remainder(spec, box, lambda0, fx, region, 0, t);
    const ComplexField inside(localized.values - remainder.values);
    const Eigen::MatrixXcd approx = ops.heisenberg(ops.weyl(fx), t) - cf * ops.weyl(inside);
    ql.add(std::abs((ops.restrict(approx) * psi).norm() -
                    quasi_locality_error(spec, box, lambda0, alpha, fx, region, 0, t)));

    const Eigen::MatrixXcd wx = ops.weyl(project_localized(spec, lambda0, f));
    commute.add(spectral_norm(projection * wx - wx * projection));
    restricted.add(std::abs(ops.restricted_norm(wf) - restriction_constant(spec, lambda0, f).constant));
    dynamics.add(spectral_norm((wf_t - ops.weyl(evolve(spec, f, t))) * cut));
  }
  for (Tracker* t : {&lr, &pq, &corr, &ql, &commute, &restricted, &dynamics}) out.push_back(t->finish());
}

void series_checks(const OracleSuiteOptions& options, std::vector<AgreementCheck>& out) {
  Tracker series("correlation_closed_form_vs_series", 1e-8);
  auto rng = make_stream(options.seed, 1, StreamTag::test);
  for (int i = 0; i < 20; ++i) {
    const int length = 2 + static_cast<int>(rng() % 5);
    const SpectralData spec = random_chain(rng, length);
    const double lambda0 = random_threshold(rng, spec);
    const std::size_t n = spec.size();
    const ComplexField f = random_field(rng, n, 0.4);
    const ComplexField g = random_field(rng, n, 0.4);
    const double t = uniform(rng, 0.0, 5.0);
    const OccupationVector alpha = random_alpha(rng, n, localized_count(spec, lambda0), 3);
    series.add(std::abs(dynamic_correlation(spec, lambda0, alpha, f, g, t) -
                        correlation_series(spec, lambda0, alpha, f, g, t, 40)));
  }
  out.push_back(series.finish());
}

}  // namespace

std::vector<AgreementCheck> run_oracle_suite(const OracleSuiteOptions& options) {
  std::vector<AgreementCheck> out;
  single_mode_checks(out);
  many_body_checks(options, out);
  series_checks(options, out);
  return out;
}

EnsembleResult oracle_suite_result(const ExperimentConfig& config, const OracleSuiteOptions& options) {
  const std::vector<AgreementCheck> checks = run_oracle_suite(options);
  EnsembleResult out;
  out.experiment = to_string(config.kind);
  out.config_digest = config_digest(config);
  out.seed = options.seed;
  out.version = library_version();
  out.samples = 1;
  double failed = 0.0;
  for (const auto& c : checks) {
    out.rows.push_back({c.name, "tolerance", c.tolerance, {c.max_deviation, 0.0, c.instances}});
    if (!c.passed) failed += 1.0;
  }
  out.metadata["failed_checks"] = failed;
  out.metadata["samples"] = 1.0;
  return out;
}

}  // namespace osc
