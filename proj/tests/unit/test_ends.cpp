#include <gtest/gtest.h>

#include <cmath>

#include "hypgrowth/ends.hpp"
#include "hypgrowth/errors.hpp"
#include "hypgrowth/family.hpp"
#include "hypgrowth/rng.hpp"

using namespace hypgrowth;
using namespace hypgrowth::ends;
using graph::EmbeddedGraph;
using geom::Point;

namespace {

EmbeddedGraph tower_graph(double reach, int k_max) {
  const auto family = graph::make_family("{5,4}");
  return family->generate(geom::Isometry::identity(2),
                          graph::Region::band_box(reach, std::ldexp(1.0, -(k_max + 3)), 1.0));
}

std::vector<std::uint8_t> random_states(std::size_t n, double p, std::uint64_t seed) {
  std::vector<std::uint8_t> s(n);
  for (std::size_t e = 0; e < n; ++e) s[e] = edge_uniform(seed, e) < p;
  return s;
}

}  // namespace

TEST(Tower, AllClosedNeverQualifies) {
  const auto g = tower_graph(2.5, 3);
  const auto rep = slab_tower(g, std::vector<std::uint8_t>(g.edge_count(), 0), 2.0, 0.5, 3);
  ASSERT_EQ(rep.levels.size(), 4u);
  for (const auto& level : rep.levels) {
    EXPECT_FALSE(level.qualifies);
    for (const auto& c : level.clusters) EXPECT_EQ(c.proj_diameter, 0.0);
  }
}

TEST(Tower, VerticalChainHasNoWidth) {
  std::vector<Point> pts;
  std::vector<graph::Edge> edges;
  for (int i = 0; i <= 8; ++i) pts.emplace_back(std::initializer_list<double>{0.0}, std::ldexp(1.0, -i));
  for (graph::VertexId i = 0; i < 8; ++i) edges.push_back({i, i + 1});
  const EmbeddedGraph g(2, pts, edges, 0, graph::GraphMeta{});
  const auto rep = slab_tower(g, std::vector<std::uint8_t>(edges.size(), 1), 1.0, 0.1, 3);
  for (const auto& level : rep.levels) {
    EXPECT_FALSE(level.qualifies);
    ASSERT_EQ(level.clusters.size(), 1u);
    EXPECT_EQ(level.clusters[0].proj_diameter, 0.0);
    EXPECT_EQ(level.clusters[0].size_r, 0.0);
  }
  EXPECT_TRUE(rep.monotone);
}

TEST(Tower, MonotoneOnRandomConfigurations) {
  const double r = 1.5, delta = 0.5;
  const int k_max = 3;
  const auto g = tower_graph(r + delta, k_max);
  const SlabTower tower(g, r, k_max);
  std::size_t qualifying = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto rep = slab_tower(tower, random_states(g.edge_count(), 0.5, seed), delta);
    ASSERT_TRUE(rep.monotone) << seed;
    ASSERT_TRUE(rep.size_consistent) << seed;
    ASSERT_TRUE(rep.metric_consistent) << seed;
    qualifying += rep.levels[0].qualifies;
  }
  EXPECT_GT(qualifying, 0u);
}

TEST(Tower, GuardBandIsChecked) {
  const auto g = tower_graph(1.0, 3);
  EXPECT_THROW(slab_tower(g, std::vector<std::uint8_t>(g.edge_count(), 0), 2.0, 0.5, 3), GuardBandError);
}

TEST(Tower, DefaultFloor) {
  const auto g = tower_graph(2.0, 2);
  const SlabTower tower(g, 1.0, 2);
  EXPECT_EQ(tower.k_max(), 2);
  EXPECT_EQ(tower.y_min(), 1.0 / 32);
  for (int k = 0; k <= 2; ++k) EXPECT_LE(tower.level(k).hi(), std::ldexp(1.0, -k));
}

TEST(Scaling, IdentityAtZero) {
  const auto g = graph::make_family("{5,4}")->generate(geom::Isometry::identity(2), graph::Region::ball(4.0));
  const auto rep = scaling_equivariance_check(g, 0, 0.5, 1);
  EXPECT_TRUE(rep.passed);
  EXPECT_EQ(rep.fragment_mismatches, 0u);
  EXPECT_EQ(rep.max_coordinate_error, 0.0);
}

TEST(Scaling, LevelsOneToFour) {
  const auto g = graph::make_family("{5,4}")->generate(geom::Isometry::identity(2), graph::Region::ball(5.0));
  for (int k = 1; k <= 4; ++k) {
    const auto rep = scaling_equivariance_check(g, k, 0.6, 100 + k);
    EXPECT_TRUE(rep.passed) << k;
    EXPECT_GT(rep.fragments, 0u);
    EXPECT_EQ(rep.fragment_mismatches, 0u);
    EXPECT_LE(rep.max_coordinate_error, 1e-9);
    EXPECT_LE(rep.max_report_error, 1e-9);
  }
}

TEST(Scaling, SingleWideCluster) {
  // one horizontal geodesic low enough to sit below 1/8
  const EmbeddedGraph g(2, {Point({-0.05}, 0.02), Point({0.05}, 0.02)}, {{0, 1}}, 0, graph::GraphMeta{});
  const auto rep = scaling_equivariance_check(g, 3, 1.0, 1);
  EXPECT_TRUE(rep.passed);
  EXPECT_EQ(rep.clusters, 1u);
  EXPECT_LE(rep.max_report_error, 1e-9);
}

TEST(Survey, ClosedGivesZero) {
  const auto family = graph::make_family("{5,4}");
  const auto rep = end_boundary_survey(*family, 0.0, {0.5, 1.0}, 1.0, 3, 200, 1, TailFit{1.0, 1.0});
  for (const auto& row : rep.rows) EXPECT_EQ(row.frequency, 0.0);
  EXPECT_EQ(rep.monotonicity_violations, 0u);
}

TEST(Survey, HugeDeltaGivesZero) {
  const auto family = graph::make_family("{5,4}");
  const auto rep = end_boundary_survey(*family, 0.05, {40.0}, 1.0, 2, 200, 1, TailFit{1.0, 1.0});
  for (const auto& row : rep.rows) EXPECT_EQ(row.frequency, 0.0);
}

TEST(Survey, DeepLevelsAreRarer) {
  const auto family = graph::make_family("{5,4}");
  const auto rep = end_boundary_survey(*family, 0.05, {0.25, 0.5}, 2.0, 4, 2000, 3, TailFit{2.0, 4.0});
  EXPECT_EQ(rep.monotonicity_violations, 0u);
  EXPECT_TRUE(rep.non_increasing);
  std::map<double, std::map<int, double>> freq;
  for (const auto& row : rep.rows) {
    freq[row.delta][row.k] = row.frequency;
    EXPECT_NEAR(row.bound, std::ldexp(1.0, row.k) * 2.0 * std::exp(-4.0 * row.delta * std::ldexp(1.0, row.k) / 2),
                1e-12);
  }
  for (auto& [delta, by_k] : freq) EXPECT_LE(by_k[4], by_k[0]) << delta;
}

TEST(Survey, RequiresFit) {
  const auto family = graph::make_family("{5,4}");
  EXPECT_THROW(end_boundary_survey(*family, 0.05, {0.5}, 1.0, 2, 10, 1, std::nullopt), DomainError);
}
