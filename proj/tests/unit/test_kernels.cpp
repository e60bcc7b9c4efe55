#include "osclab/kernels.hpp"
#include "osclab/weyl.hpp"

#include <gtest/gtest.h>

using namespace osc;

namespace {

struct Fixture {
  BoxGeometry box = BoxGeometry::chain(24);
  SpectralData spec;
  TimeGrid grid = TimeGrid::uniform(9.0, 13);
  Fixture() {
    DisorderConfig cfg;
    cfg.master_seed = 31;
    spec = diagonalize(assemble(box, sample_disorder(cfg, box, 2)));
  }
};

const Complex kAf(0.8, -0.3), kAg(-0.4, 0.9);

}  // namespace

TEST(Kernels, ShellSites) {
  const BoxGeometry square = BoxGeometry::cube(2, 5);
  const auto s = shell_sites(square, square.index({2, 2}), 2);
  EXPECT_EQ(s.size(), 8u);
  EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
  EXPECT_TRUE(shell_sites(BoxGeometry::chain(5), 0, 9).empty());
}

TEST(Kernels, LrGridMatchesPointwise) {
  const Fixture fx;
  const std::vector<SiteIndex> ys = {3, 15, 20};
  for (double lambda0 : {kFullSpectrum, fx.spec.eigenvalues(10), -1.0}) {
    const Eigen::MatrixXd g = lr_norm_grid(fx.spec, lambda0, 12, kAf, ys, kAg, fx.grid);
    for (std::size_t i = 0; i < fx.grid.times.size(); ++i) {
      for (std::size_t k = 0; k < ys.size(); ++k) {
        const double ref = lr_weyl_commutator_norm(fx.spec, lambda0, ComplexField::delta(24, 12, kAf),
                                                   ComplexField::delta(24, ys[k], kAg), fx.grid.times[i]);
        EXPECT_NEAR(g(i, k), ref, 1e-12);
      }
    }
  }
}

TEST(Kernels, PqGridMatchesPointwise) {
  const Fixture fx;
  const std::vector<SiteIndex> ys = {0, 12, 13};
  const double lambda0 = fx.spec.eigenvalues(15);
  const auto g = pq_grid(fx.spec, lambda0, 12, ys, fx.grid);
  for (std::size_t i = 0; i < fx.grid.times.size(); ++i) {
    for (std::size_t k = 0; k < ys.size(); ++k) {
      const Eigen::Matrix2d m = pq_commutator_matrix(fx.spec, lambda0, 12, ys[k], fx.grid.times[i]);
      EXPECT_NEAR(g[0](i, k), m(0, 0), 1e-13);
      EXPECT_NEAR(g[1](i, k), m(0, 1), 1e-13);
      EXPECT_NEAR(g[2](i, k), m(1, 0), 1e-13);
      EXPECT_NEAR(g[3](i, k), m(1, 1), 1e-13);
    }
  }
}

TEST(Kernels, CorrelationGridMatchesPointwise) {
  const Fixture fx;
  const std::vector<SiteIndex> ys = {10, 13, 18};
  const double lambda0 = fx.spec.eigenvalues(17);
  OccupationVector alpha = OccupationVector::zeros(24);
  alpha.counts[0] = 1;
  alpha.counts[5] = 2;
  alpha.counts[17] = 1;
  const Eigen::MatrixXcd g = correlation_grid(fx.spec, lambda0, alpha, 12, kAf, ys, kAg, fx.grid);
  for (std::size_t i = 0; i < fx.grid.times.size(); ++i) {
    for (std::size_t k = 0; k < ys.size(); ++k) {
      const Complex ref = dynamic_correlation(fx.spec, lambda0, alpha, ComplexField::delta(24, 12, kAf),
                                              ComplexField::delta(24, ys[k], kAg), fx.grid.times[i]);
      EXPECT_LT(std::abs(g(i, k) - ref), 1e-12);
    }
  }
}

TEST(Kernels, QuasiLocalityGridMatchesPointwise) {
  const Fixture fx;
  const double lambda0 = fx.spec.eigenvalues(19);
  const std::vector<OccupationVector> family = {OccupationVector::zeros(24),
                                                OccupationVector(std::vector<unsigned>(24, 0)),
                                                [] {
                                                  OccupationVector a = OccupationVector::zeros(24);
                                                  a.counts[2] = 1;
                                                  a.counts[11] = 3;
                                                  return a;
                                                }()};
  const ComplexField f = ComplexField::delta(24, 7, kAf);
  const QuasiLocalityGrid g = quasi_locality_grid(fx.spec, fx.box, lambda0, 7, kAf, 1, 6, fx.grid, family);
  const SiteSet region = SiteSet::single(7);
  for (int n = 1; n <= 6; ++n) {
    for (std::size_t i = 0; i < fx.grid.times.size(); ++i) {
      const double t = fx.grid.times[i];
      const double z = v_map(fx.spec, localized_remainder(fx.spec, fx.box, lambda0, f, region, n, t)).amplitudes.norm();
      EXPECT_NEAR(g.remainder_norm(n - 1, i), z, 1e-12);
      for (std::size_t a = 0; a < family.size(); ++a) {
        const double ref = quasi_locality_error(fx.spec, fx.box, lambda0, family[a], f, region, n, t);
        EXPECT_NEAR(g.errors[a](n - 1, i), ref, 1e-12);
      }
    }
  }
}

TEST(Kernels, LayoutMatchesSampleRecord) {
  ExperimentConfig cfg;
  cfg.box = BoxGeometry::chain(20);
  cfg.shell_min = 1;
  cfg.shell_max = 12;
  cfg.time_points = 20;
  cfg.ladder = {10, 20};
  cfg.n_max = 4;
  cfg.samples = 1;
  for (ExperimentKind k : all_experiment_kinds()) {
    if (k == ExperimentKind::oracle_check) continue;
    cfg.kind = k;
    const auto layout = result_layout(cfg);
    const SampleRecord r = evaluate_sample(cfg, 0);
    EXPECT_EQ(r.values.size(), layout.size()) << to_string(k);
    EXPECT_TRUE(r.counters.count("degenerate_samples") || k == ExperimentKind::energy_density ||
                k == ExperimentKind::gap_stats)
        << to_string(k);
  }
}

TEST(Kernels, EmptyShellsAreNotApplicable) {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::eigencorrelator;
  cfg.box = BoxGeometry::chain(20);
  cfg.shell_min = 5;
  cfg.shell_max = 15;  // the center 10 has no partner at distance 11
  const auto layout = result_layout(cfg);
  const SampleRecord r = evaluate_sample(cfg, 0);
  for (std::size_t i = 0; i < layout.size(); ++i) {
    EXPECT_EQ(std::isnan(r.values[i]), layout[i].key > 10) << layout[i].quantity << ' ' << layout[i].key;
  }
}
