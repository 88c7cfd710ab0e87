#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hypgrowth/geometry.hpp"
#include "hypgrowth/isometry.hpp"

using namespace hypgrowth::geom;

TEST(Distance, IdentityIsZero) {
  EXPECT_DOUBLE_EQ(hyperbolic_distance(Point::origin(2), Point::origin(2)), 0.0);
}

TEST(Distance, VerticalGeodesicIsLogRatio) {
  EXPECT_NEAR(hyperbolic_distance(Point({0.0}, 1.0), Point({0.0}, std::exp(1.0))), 1.0, 1e-14);
}

TEST(Distance, MatchesClosedForm) {
  const Point a({0.0}, 1.0), b({1.0}, 1.0);
  EXPECT_NEAR(hyperbolic_distance(a, b), std::acosh(1.0 + 1.0 / 2.0), 1e-14);
}

TEST(Distance, StableForNearbyPoints) {
  const Point a({0.0}, 1.0), b({1e-9}, 1.0);
  EXPECT_NEAR(hyperbolic_distance(a, b), 1e-9, 1e-20);
}

TEST(Deth, SameVerticalLine) { EXPECT_EQ(d_eth(Point({0.0, 0.0}, 1.0), Point({0.0, 0.0}, 0.5)), 0.0); }

TEST(Deth, LinfOfHorizontalOffset) { EXPECT_EQ(d_eth(Point({0.0, 0.0}, 1.0), Point({3.0, -4.0}, 0.5)), 4.0); }

TEST(Deth, TriangleInequality) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5, 5), h(0.01, 3);
  for (int i = 0; i < 1000; ++i) {
    const Point a({u(rng), u(rng)}, h(rng)), b({u(rng), u(rng)}, h(rng)), c({u(rng), u(rng)}, h(rng));
    EXPECT_LE(d_eth(a, c), d_eth(a, b) + d_eth(b, c) + 1e-12);
  }
}

TEST(Phi, UnitHeightIdentityRotationIsIdentity) {
  const auto phi = Isometry::phi(1.0, rotation2(0.0));
  const Point p({0.3}, 0.7);
  const Point q = phi.apply(p);
  EXPECT_NEAR(q.horizontal(0), 0.3, 1e-14);
  EXPECT_NEAR(q.height(), 0.7, 1e-14);
}

TEST(Phi, PureScaling) {
  const Orthogonal id = Orthogonal::Identity(3, 3);
  const auto phi = Isometry::phi(0.25, id);
  const Point q = phi.apply(Point({0.0, 0.0}, 3.0));
  EXPECT_NEAR(q.horizontal(0), 0.0, 1e-15);
  EXPECT_NEAR(q.height(), 0.75, 1e-15);
}

TEST(Phi, DerivativeAtOriginIsHTimesR) {
  // rotation by pi/2 in the horizontal plane of H^3
  Orthogonal r = Orthogonal::Identity(3, 3);
  r(0, 0) = 0;
  r(0, 1) = -1;
  r(1, 0) = 1;
  r(1, 1) = 0;
  const double h = 0.5, step = 1e-5;
  const auto phi = Isometry::phi(h, r);
  const Point o = Point::origin(3);
  EXPECT_NEAR(phi.apply(o).height(), h, 1e-14);
  for (int j = 0; j < 3; ++j) {
    std::array<double, 3> plus{0, 0, 1}, minus{0, 0, 1};
    plus[j] += step;
    minus[j] -= step;
    const Point a = phi.apply(Point({plus[0], plus[1]}, plus[2]));
    const Point b = phi.apply(Point({minus[0], minus[1]}, minus[2]));
    const double col[3] = {(a.horizontal(0) - b.horizontal(0)) / (2 * step),
                           (a.horizontal(1) - b.horizontal(1)) / (2 * step), (a.height() - b.height()) / (2 * step)};
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(col[i], h * r(i, j), 1e-6) << i << "," << j;
  }
}

TEST(Phi, NonRotationIsAnIsometry) {
  std::mt19937_64 rng(11);
  const auto r = random_orthogonal(2, rng);
  const auto phi = Isometry::phi(0.3, r);
  std::uniform_real_distribution<double> u(-2, 2), h(0.1, 2);
  for (int i = 0; i < 100; ++i) {
    const Point a({u(rng)}, h(rng)), b({u(rng)}, h(rng));
    EXPECT_NEAR(hyperbolic_distance(phi.apply(a), phi.apply(b)), hyperbolic_distance(a, b), 1e-10);
  }
}

TEST(ScaleTranslate, Identity) {
  const double zero[] = {0.0};
  const Point q = Isometry::scale_translate(1.0, zero).apply(Point({0.4}, 0.9));
  EXPECT_DOUBLE_EQ(q.horizontal(0), 0.4);
  EXPECT_DOUBLE_EQ(q.height(), 0.9);
}

TEST(ScaleTranslate, ScalesOrigin) {
  const double zero[] = {0.0, 0.0};
  const Point q = Isometry::scale_translate(2.0, zero).apply(Point::origin(3));
  EXPECT_DOUBLE_EQ(q.height(), 2.0);
  EXPECT_DOUBLE_EQ(q.horizontal(0), 0.0);
}

TEST(ScaleTranslate, MovesVertexToAxisAtGivenHeight) {
  const Point v({1.5, -0.25}, 0.2);
  const double H = 3.0;
  const double shift[] = {-v.horizontal(0), -v.horizontal(1)};
  // translate first, then scale
  const auto phi = Isometry::scale_translate(1.0 / (H * v.height()), std::array<double, 2>{0, 0})
                       .compose(Isometry::scale_translate(1.0, shift));
  const Point q = phi.apply(v);
  EXPECT_NEAR(q.horizontal(0), 0.0, 1e-15);
  EXPECT_NEAR(q.horizontal(1), 0.0, 1e-15);
  EXPECT_NEAR(q.height(), 1.0 / H, 1e-15);
}

TEST(Box, OriginInEveryBall) {
  EXPECT_TRUE(in_box(Point::origin(2), Box(Point::origin(2), 0.01)));
}

TEST(Box, SphereAtExactDistance) {
  const Box b(Point::origin(3), 2.5);
  EXPECT_TRUE(on_sphere(Point({2.5, -1.0}, 0.3), b, 1e-12));
  EXPECT_FALSE(on_sphere(Point({2.4, -1.0}, 0.3), b, 1e-12));
}

TEST(Box, CoverCount) {
  const auto centers = box_cover_centers(3, 10.0, 1.0);
  EXPECT_EQ(centers.size(), 100u);
  // every grid point of the big box lies in some translate
  for (double x = -10; x <= 10; x += 0.5)
    for (double y = -10; y <= 10; y += 0.5) {
      bool covered = false;
      for (const auto& c : centers) covered = covered || (std::abs(x - c[0]) <= 1 + 1e-12 && std::abs(y - c[1]) <= 1 + 1e-12);
      ASSERT_TRUE(covered) << x << "," << y;
    }
}

TEST(Hyperboloid, RoundTrip) {
  const Point p({0.3, -2.0}, 0.05);
  const Point q = from_hyperboloid(to_hyperboloid(p));
  EXPECT_NEAR(q.horizontal(0), 0.3, 1e-13);
  EXPECT_NEAR(q.horizontal(1), -2.0, 1e-13);
  EXPECT_NEAR(q.height(), 0.05, 1e-15);
  EXPECT_NEAR(minkowski_dot(to_hyperboloid(p), to_hyperboloid(p)), -1.0, 1e-9);
}
