#include "osclab/anderson.hpp"
#include "osclab/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace osc;

namespace {

SpectralData sample_spectrum(int length, std::uint64_t seed, std::uint64_t index) {
  DisorderConfig cfg;
  cfg.master_seed = seed;
  const BoxGeometry box = BoxGeometry::chain(length);
  return diagonalize(assemble(box, sample_disorder(cfg, box, index)));
}

}  // namespace

TEST(Disorder, DeterministicAndInRange) {
  DisorderConfig cfg;
  cfg.k_max = 2.5;
  cfg.master_seed = 42;
  const BoxGeometry box = BoxGeometry::chain(500);
  const auto a = sample_disorder(cfg, box, 3);
  const auto b = sample_disorder(cfg, box, 3);
  const auto c = sample_disorder(cfg, box, 4);
  EXPECT_EQ(a.k, b.k);
  EXPECT_NE(a.k, c.k);
  EXPECT_GT(a.k.minCoeff(), 0.0);
  EXPECT_LE(a.k.maxCoeff(), 2.5);
  // Uniform on (0, 2.5]: the mean sits near 1.25.
  EXPECT_NEAR(a.k.mean(), 1.25, 0.15);
}

TEST(Disorder, InverseCdfTable) {
  DisorderConfig cfg;
  cfg.k_max = 1.0;
  cfg.inverse_cdf = {0.5, 0.5};
  const auto s = sample_disorder(cfg, BoxGeometry::chain(50), 0);
  EXPECT_LT((s.k.array() - 0.5).abs().maxCoeff(), 1e-15);

  cfg.inverse_cdf = {0.0, 0.25, 1.0};
  const auto t = sample_disorder(cfg, BoxGeometry::chain(2000), 1);
  EXPECT_GT(t.k.minCoeff(), 0.0);
  // Half of the mass lies below the middle quantile.
  const double below = (t.k.array() <= 0.25).cast<double>().mean();
  EXPECT_NEAR(below, 0.5, 0.05);
}

TEST(Disorder, InvalidConfigurations) {
  DisorderConfig cfg;
  cfg.k_max = 0.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.k_max = 1.0;
  cfg.inverse_cdf = {0.3};
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.inverse_cdf = {0.5, 0.2};
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.inverse_cdf = {0.0, 0.0};
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Streams, IndependentTags) {
  auto a = make_stream(1, 2, StreamTag::disorder);
  auto b = make_stream(1, 2, StreamTag::alpha_family);
  auto c = make_stream(1, 2, StreamTag::disorder);
  const auto x = a();
  EXPECT_NE(x, b());
  EXPECT_EQ(x, c());
}

TEST(Assemble, AddsPotentialToLaplacian) {
  const BoxGeometry box = BoxGeometry::cube(2, 3);
  DisorderConfig cfg;
  const auto s = sample_disorder(cfg, box, 0);
  const Eigen::MatrixXd h = assemble(box, s, BoundaryCondition::dirichlet);
  EXPECT_TRUE((h - dirichlet_laplacian(box)).isApprox(Eigen::MatrixXd(s.k.asDiagonal())));
  DisorderSample wrong;
  wrong.k = Eigen::VectorXd::Ones(3);
  EXPECT_THROW(assemble(box, wrong), std::invalid_argument);
}

TEST(Spectrum, PositiveAndReconstructs) {
  DisorderConfig cfg;
  const BoxGeometry box = BoxGeometry::chain(60);
  const Eigen::MatrixXd h = assemble(box, sample_disorder(cfg, box, 9));
  const SpectralData spec = diagonalize(h);
  EXPECT_GT(spec.eigenvalues(0), 0.0);
  EXPECT_LT(reconstruction_error(spec, h), 1e-12);
  EXPECT_LT((spec.gammas.array().square() - spec.eigenvalues.array()).abs().maxCoeff(), 1e-14);
  EXPECT_DOUBLE_EQ(spec.norm(), spec.eigenvalues.maxCoeff());
  EXPECT_LE(spec.norm(), 4.0 + 1.0);
}

TEST(Spectrum, LocalizedPrefix) {
  const SpectralData spec = sample_spectrum(30, 1, 0);
  EXPECT_EQ(localized_count(spec, kFullSpectrum), 30u);
  EXPECT_EQ(localized_count(spec, -1.0), 0u);
  const double mid = spec.eigenvalues(11);
  EXPECT_EQ(localized_count(spec, mid), 12u);
  const auto modes = localized_modes(spec, mid);
  ASSERT_EQ(modes.size(), 12u);
  EXPECT_EQ(modes.back(), 11u);
}

TEST(Eigencorrelator, MatchesDirectSumAndSymmetry) {
  const SpectralData spec = sample_spectrum(40, 7, 2);
  const double lambda0 = 1.3;
  for (int s : {-1, 0, 1}) {
    for (SiteIndex x : {0u, 13u, 39u}) {
      for (SiteIndex y : {5u, 20u}) {
        double sum = 0.0;
        for (Eigen::Index j = 0; j < spec.gammas.size(); ++j) {
          if (spec.eigenvalues(j) > lambda0) continue;
          sum += std::pow(spec.gammas(j), s) * std::abs(spec.modes(x, j)) * std::abs(spec.modes(y, j));
        }
        const auto v = eigencorrelator(spec, lambda0, s, x, y);
        EXPECT_NEAR(v.value, sum, 1e-13);
        EXPECT_DOUBLE_EQ(v.value, eigencorrelator(spec, lambda0, s, y, x).value);
      }
    }
  }
  EXPECT_THROW(eigencorrelator(spec, lambda0, 2, 0, 0), std::invalid_argument);
  EXPECT_THROW(eigencorrelator(spec, lambda0, 0, 0, 40), std::invalid_argument);
}

TEST(Eigencorrelator, CauchySchwarzForQ0) {
  // Q_0(x,y) <= sqrt(sum phi_j(x)^2 sum phi_j(y)^2) = 1 at full spectrum.
  const SpectralData spec = sample_spectrum(50, 3, 0);
  for (SiteIndex y = 0; y < 50; ++y) {
    EXPECT_LE(eigencorrelator(spec, kFullSpectrum, 0, 25, y).value, 1.0 + 1e-12);
  }
  EXPECT_NEAR(eigencorrelator(spec, kFullSpectrum, 0, 25, 25).value, 1.0, 1e-12);
}

TEST(Gaps, DegeneracyDetection) {
  SpectralData spec;
  spec.eigenvalues = Eigen::Vector4d(1.0, 2.0, 2.0, 3.0);
  spec.gammas = spec.eigenvalues.cwiseSqrt();
  EXPECT_DOUBLE_EQ(min_gap(spec), 0.0);
  EXPECT_FALSE(has_degenerate_gap(spec, 2));
  EXPECT_TRUE(has_degenerate_gap(spec, 3));
  SpectralData one;
  one.eigenvalues = Eigen::VectorXd::Constant(1, 1.0);
  one.gammas = one.eigenvalues;
  EXPECT_TRUE(std::isinf(min_gap(one)));
}
