#include <gtest/gtest.h>

#include <cmath>
#include <deque>
#include <random>

#include "hypgrowth/errors.hpp"
#include "hypgrowth/family.hpp"
#include "hypgrowth/gadgets.hpp"
#include "hypgrowth/gp_estimate.hpp"
#include "hypgrowth/percolation.hpp"
#include "hypgrowth/tiling.hpp"

using namespace hypgrowth;
using namespace hypgrowth::perc;
using graph::SlabGraph;
using graph::VertexId;

namespace {

SlabGraph tiling_slab(double h = 0.3, double angle = 0.7, double half_width = 2.5) {
  const auto family = graph::make_family("{5,4}");
  const auto g = family->generate(geom::Isometry::phi(h, geom::rotation2(angle)),
                                  graph::Region::band_box(half_width, h / 16, 1.0));
  return graph::clip_to_band(g, h / 16, 1.0);
}

std::vector<int> bfs_labels(const SlabGraph& g, const Configuration& c) {
  std::vector<int> label(g.vertex_count(), -1);
  int next = 0;
  for (VertexId s = 0; s < g.vertex_count(); ++s) {
    if (label[s] >= 0) continue;
    std::deque<VertexId> queue{s};
    label[s] = next;
    while (!queue.empty()) {
      const VertexId v = queue.front();
      queue.pop_front();
      for (auto f : g.incident(v)) {
        const VertexId w = g.other_end(f, v);
        if (label[w] < 0 && c.is_open(g.fragment(f).parent)) {
          label[w] = next;
          queue.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

}  // namespace

TEST(Sample, Extremes) {
  const auto g = tiling_slab();
  EXPECT_EQ(Configuration::sample(g, 0.0, 3).open_count(), 0u);
  EXPECT_EQ(Configuration::sample(g, 1.0, 3).open_count(), g.parent_count());
}

TEST(Sample, RejectsBadP) {
  EXPECT_THROW(Configuration::sample(10, 1.5, 1), DomainError);
  EXPECT_THROW(Configuration::sample(10, -0.1, 1), DomainError);
}

TEST(Sample, BinomialConcentration) {
  const std::size_t n = 100000;
  const auto c = Configuration::sample(n, 0.5, 42);
  const double frac = static_cast<double>(c.open_count()) / static_cast<double>(n);
  EXPECT_LT(std::abs(frac - 0.5), 4.0 * 0.5 / std::sqrt(static_cast<double>(n)));
}

TEST(Sample, Deterministic) {
  EXPECT_EQ(Configuration::sample(5000, 0.3, 9).states(), Configuration::sample(5000, 0.3, 9).states());
  EXPECT_NE(Configuration::sample(5000, 0.3, 9).states(), Configuration::sample(5000, 0.3, 10).states());
}

TEST(Sample, CoupledMonotone) {
  const auto g = tiling_slab();
  const SphereTarget sphere{{0.0}, 1.5};
  std::uint64_t violations = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    const auto lo = Configuration::sample(g, 0.3, seed), hi = Configuration::sample(g, 0.6, seed);
    for (std::size_t e = 0; e < lo.size(); ++e) violations += lo.is_open(e) && !hi.is_open(e);
    violations += connects(g, lo, {*g.origin()}, sphere) && !connects(g, hi, {*g.origin()}, sphere);
  }
  EXPECT_EQ(violations, 0u);
}

TEST(Clusters, AllClosedGivesSingletons) {
  const auto g = tiling_slab();
  const auto c = Configuration::sample(g, 0.0, 1);
  EXPECT_EQ(clusters(g, c).members.size(), g.vertex_count());
  EXPECT_EQ(cluster_of(g, c, *g.origin()).size_r, g.deth_origin(*g.origin()));
}

TEST(Clusters, AllOpenGivesComponent) {
  const auto g = graph::whole_graph(graph::gen_tiling_h2(5, 4, 3.0));
  const auto c = Configuration::sample(g, 1.0, 1);
  EXPECT_EQ(clusters(g, c).members.size(), 1u);
  EXPECT_EQ(cluster_of(g, c, 0).vertex_count, g.vertex_count());
}

TEST(Clusters, PathWithOneOpenEdge) {
  const auto gadget = oracle::make_gadget("path", {{0, 1}, {1, 1}, {2, 1}}, {{0, 1}, {1, 2}}, 2, {});
  const auto c = Configuration::from_states({1, 0});
  const auto report = cluster_of(gadget.graph, c, 0);
  EXPECT_EQ(report.vertex_count, 2u);
  EXPECT_NEAR(report.size_r, 1.0, 1e-12);
  EXPECT_NEAR(report.proj_diameter, 1.0, 1e-12);
}

TEST(Clusters, RejectsUnknownVertex) {
  const auto gadget = oracle::make_gadget("path", {{0, 1}, {1, 1}}, {{0, 1}}, 1, {});
  EXPECT_THROW(cluster_of(gadget.graph, Configuration::from_states({1}), 7), DomainError);
}

TEST(Clusters, UnionFindAgreesWithBfs) {
  const auto g = tiling_slab(0.5, 0.2, 1.5);
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto c = Configuration::sample(g, 0.5, seed);
    const auto part = clusters(g, c);
    const auto bfs = bfs_labels(g, c);
    std::map<int, std::uint32_t> bfs_to_uf;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      const auto [it, fresh] = bfs_to_uf.emplace(bfs[v], part.label[v]);
      ASSERT_EQ(it->second, part.label[v]) << "seed " << seed;
    }
    ASSERT_EQ(bfs_to_uf.size(), part.members.size());
  }
}

TEST(Clusters, ProjectionDiameterBound) {
  const auto g = tiling_slab();
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto r = cluster_of(g, Configuration::sample(g, 0.6, seed), *g.origin());
    EXPECT_LE(r.proj_diameter, 2.0 * r.size_r + 1e-9);
    EXPECT_LE(r.proj_diameter_linf, r.proj_diameter + 1e-12);
  }
}

TEST(Connects, SharedVertexAlwaysConnects) {
  const auto g = tiling_slab();
  const auto c = Configuration::sample(g, 0.0, 1);
  EXPECT_TRUE(connects(g, c, {*g.origin()}, VertexTarget{{*g.origin()}}));
}

TEST(Connects, ClosedNeverReachesSphere) {
  const auto g = tiling_slab();
  EXPECT_FALSE(connects(g, Configuration::sample(g, 0.0, 1), {*g.origin()}, SphereTarget{{0.0}, 1.0}));
}

TEST(Connects, LocalToItsSphere) {
  const auto g = tiling_slab(0.3, 0.7, 3.0);
  const double r = 1.5;
  std::vector<bool> inside(g.parent_count(), false);
  for (const auto& f : g.fragments())
    if (g.deth_origin(f.u) <= r || g.deth_origin(f.v) <= r) inside[f.parent] = true;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto full = Configuration::sample(g, 0.7, seed);
    auto states = full.states();
    for (std::size_t e = 0; e < states.size(); ++e)
      if (!inside[e]) states[e] = 0;
    const auto cut = Configuration::from_states(states, 0.7);
    const SphereTarget sphere{{0.0}, r};
    ASSERT_EQ(connects(g, full, {*g.origin()}, sphere), connects(g, cut, {*g.origin()}, sphere)) << seed;
  }
}

TEST(ThickOrigin, LatticeNeighbourhood) {
  for (int d = 2; d <= 3; ++d) {
    const auto g = graph::whole_graph(graph::gen_slab_lattice(d, 1.0, 3.0));
    EXPECT_EQ(thick_origin(g, 1.5).size(), static_cast<std::size_t>(std::pow(3, d - 1)));
  }
}

TEST(ThickOrigin, EmptyWhenTooSmall) {
  const auto g = tiling_slab(0.05, 0.3);
  if (!g.origin()) {
    EXPECT_TRUE(thick_origin(g, 1e-6).empty());
  }
  EXPECT_THROW(thick_origin(g, 0.0), DomainError);
}

TEST(ThickOrigin, MatchesLinearScan) {
  const auto g = tiling_slab(0.3, 0.7, 3.0);
  std::vector<VertexId> expected;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (g.is_original(v) && g.deth_origin(v) <= 2.0 && g.position(v).height() <= 1.0) expected.push_back(v);
  auto got = thick_origin(g, 2.0);
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, expected);
  EXPECT_FALSE(expected.empty());
}

TEST(GpEstimate, CouplingAndMonotonicity) {
  const auto family = graph::make_family("{5,4}");
  const auto positions = decay::sample_positions(2, 4, 7);
  decay::GpOptions opt;
  opt.trials = 2000;
  opt.seed = 5;
  const auto curve = decay::estimate_gp(*family, {0.2, 0.5}, {0.5, 1.0, 2.0}, positions, opt);
  EXPECT_EQ(curve.coupling_violations, 0u);
  EXPECT_EQ(curve.r_monotonicity_violations(), 0u);
  for (std::size_t ri = 0; ri < 3; ++ri) EXPECT_LE(curve.estimate[0][ri], curve.estimate[1][ri]);
}

TEST(GpEstimate, ThreadCountDoesNotChangeCounts) {
  const auto family = graph::make_family("{5,4}");
  const auto positions = decay::sample_positions(2, 3, 11);
  decay::GpOptions opt;
  opt.trials = 1500;
  opt.threads = 1;
  const auto a = decay::estimate_gp(*family, {0.3}, {1.0, 2.0}, positions, opt);
  opt.threads = 4;
  const auto b = decay::estimate_gp(*family, {0.3}, {1.0, 2.0}, positions, opt);
  EXPECT_EQ(a.counts, b.counts);
}

TEST(GpEstimate, BinomialInterval) {
  EXPECT_NEAR(decay::binomial_ci(0, 100), 4.0 * std::sqrt((1.0 / 102) * (101.0 / 102) / 100), 1e-15);
  EXPECT_NEAR(decay::binomial_ci(50, 100), 4.0 * std::sqrt(0.25 / 100), 1e-15);
}

TEST(Positions, FirstIsIdentity) {
  const auto ps = decay::sample_positions(3, 5, 1, 0.01);
  ASSERT_EQ(ps.size(), 5u);
  EXPECT_EQ(ps[0].h, 1.0);
  for (const auto& p : ps) {
    EXPECT_GE(p.h, 0.01);
    EXPECT_LE(p.h, 1.0);
    EXPECT_TRUE(geom::is_orthogonal(p.rotation));
  }
}
