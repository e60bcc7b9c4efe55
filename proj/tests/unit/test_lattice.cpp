#include "osclab/lattice.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace osc;

TEST(BoxGeometry, SizesAndCoordinatesRoundTrip) {
  const BoxGeometry box({{-2, 1}, {3, 5}, {0, 0}});
  EXPECT_EQ(box.dimension(), 3);
  EXPECT_EQ(box.size(), 4u * 3u * 1u);
  for (SiteIndex x = 0; x < box.size(); ++x) {
    const Coordinate c = box.coordinate(x);
    EXPECT_EQ(box.index(c), x);
  }
  // Last coordinate fastest.
  EXPECT_EQ(box.coordinate(1), (Coordinate{-2, 4, 0}));
}

TEST(BoxGeometry, RejectsEmptyIntervalsAndOutOfRange) {
  EXPECT_THROW(BoxGeometry({{2, 1}}), std::invalid_argument);
  EXPECT_THROW(BoxGeometry::chain(0), std::invalid_argument);
  EXPECT_THROW(BoxGeometry::cube(2, 0), std::invalid_argument);
  const BoxGeometry box = BoxGeometry::chain(4);
  EXPECT_THROW(box.coordinate(4), std::invalid_argument);
  EXPECT_THROW(box.index({7}), std::invalid_argument);
}

TEST(BoxGeometry, DegreesDistancesAndCenter) {
  const BoxGeometry square = BoxGeometry::cube(2, 4);
  EXPECT_EQ(square.degree(square.index({0, 0})), 2);
  EXPECT_EQ(square.degree(square.index({0, 2})), 3);
  EXPECT_EQ(square.degree(square.index({1, 2})), 4);
  EXPECT_EQ(square.l1_distance(square.index({0, 0}), square.index({3, 2})), 5);
  EXPECT_EQ(square.diameter(), 6);
  const BoxGeometry chain = BoxGeometry::chain(100);
  EXPECT_EQ(chain.center(), 49u);
  EXPECT_EQ(chain.neighbors(0), (std::vector<SiteIndex>{1}));
}

TEST(SiteSets, DistanceNeighborhoodAndBoundary) {
  const BoxGeometry chain = BoxGeometry::chain(10);
  const SiteSet x = SiteSet::single(4);
  const auto d = distance_to_set(chain, x);
  for (SiteIndex y = 0; y < 10; ++y) EXPECT_EQ(d[y], chain.l1_distance(4, y));
  EXPECT_EQ(neighborhood(chain, x, 0), x);
  EXPECT_EQ(neighborhood(chain, x, 2).sites(), (std::vector<SiteIndex>{2, 3, 4, 5, 6}));
  EXPECT_EQ(neighborhood(chain, x, 20).size(), 10u);
  EXPECT_THROW(neighborhood(chain, SiteSet{}, 1), std::invalid_argument);
  EXPECT_THROW(SiteSet({11}).validate(chain), std::invalid_argument);
}

TEST(SiteSets, DuplicatesCollapse) {
  const SiteSet s({3, 1, 3, 2});
  EXPECT_EQ(s.sites(), (std::vector<SiteIndex>{1, 2, 3}));
  EXPECT_TRUE(s.contains(2));
  EXPECT_FALSE(s.contains(0));
}

TEST(Laplacian, NeumannRowsSumToZeroAndDirichletDoublesMissingBonds) {
  for (int nu = 1; nu <= 3; ++nu) {
    const BoxGeometry box = BoxGeometry::cube(nu, 3);
    const Eigen::MatrixXd n = neumann_laplacian(box);
    const Eigen::MatrixXd d = dirichlet_laplacian(box);
    EXPECT_TRUE(n.isApprox(n.transpose()));
    EXPECT_LT(n.rowwise().sum().cwiseAbs().maxCoeff(), 1e-14);
    for (SiteIndex x = 0; x < box.size(); ++x) {
      const auto i = static_cast<Eigen::Index>(x);
      EXPECT_DOUBLE_EQ(n(i, i), box.degree(x));
      // Each missing bond is counted twice: 4 nu - degree on the diagonal.
      EXPECT_DOUBLE_EQ(d(i, i), 4.0 * nu - box.degree(x));
    }
    EXPECT_TRUE((d - n).isDiagonal());
  }
}

TEST(Laplacian, QuadraticFormIsSumOverBonds) {
  const BoxGeometry box = BoxGeometry::cube(2, 4);
  const Eigen::MatrixXd n = neumann_laplacian(box);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  Eigen::VectorXd v(static_cast<Eigen::Index>(box.size()));
  for (auto& e : v) e = g(rng);
  double bonds = 0.0;
  for (SiteIndex x = 0; x < box.size(); ++x) {
    for (SiteIndex y : box.neighbors(x)) {
      if (y > x) bonds += std::pow(v(static_cast<Eigen::Index>(x)) - v(static_cast<Eigen::Index>(y)), 2);
    }
  }
  EXPECT_NEAR(v.dot(n * v), bonds, 1e-10);
}
