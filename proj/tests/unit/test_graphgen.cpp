#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "hypgrowth/embedded_graph.hpp"
#include "hypgrowth/errors.hpp"
#include "hypgrowth/family.hpp"
#include "hypgrowth/graph_io.hpp"
#include "hypgrowth/slab_graph.hpp"
#include "hypgrowth/tiling.hpp"

using namespace hypgrowth;
using namespace hypgrowth::graph;
using geom::Point;

namespace {

std::vector<int> degrees(const EmbeddedGraph& g) {
  std::vector<int> d(g.vertex_count(), 0);
  for (const auto& e : g.edges()) ++d[e.u], ++d[e.v];
  return d;
}

}  // namespace

TEST(Tiling, RejectsNonHyperbolic) {
  EXPECT_THROW(gen_tiling_h2(4, 4, 2.0), DomainError);
  EXPECT_THROW(gen_tiling_h2(3, 6, 2.0), DomainError);
  EXPECT_THROW(gen_tiling_h2(3, 5, 2.0), DomainError);
}

TEST(Tiling, VertexCapIsEnforced) { EXPECT_THROW(gen_tiling_h2(5, 4, 8.0, 100), DomainError); }

TEST(Tiling, OneEdgeLengthGivesStar) {
  const double ell = tiling_edge_length(5, 4);
  const auto g = gen_tiling_h2(5, 4, ell * 1.001);
  EXPECT_EQ(g.vertex_count(), 5u);
  EXPECT_EQ(g.edge_count(), 4u);
  EXPECT_EQ(g.origin_index(), 0u);
}

TEST(Tiling, EdgeLengthClosedForm) {
  const double expected = 2.0 * std::acosh(std::cos(M_PI / 5) / std::sin(M_PI / 4));
  EXPECT_NEAR(tiling_edge_length(5, 4), expected, 1e-15);
  const auto g = gen_tiling_h2(5, 4, 4.0);
  for (const auto& e : g.edges())
    EXPECT_NEAR(geom::hyperbolic_distance(g.vertex(e.u), g.vertex(e.v)), expected, 1e-9);
}

TEST(Tiling, Valence) {
  const double radius = 5.0, ell = tiling_edge_length(5, 4);
  const auto g = gen_tiling_h2(5, 4, radius);
  const auto d = degrees(g);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    EXPECT_LE(d[v], 4);
    if (geom::hyperbolic_distance(g.vertex(0), g.vertex(v)) <= radius - ell) {
      EXPECT_EQ(d[v], 4) << v;
    }
  }
}

TEST(Tiling, Heptagonal37ConnectedAndSimple) {
  const auto g = gen_tiling_h2(3, 7, 3.0);
  EXPECT_TRUE(g.is_connected());
  EXPECT_TRUE(g.is_simple());
  EXPECT_GT(g.vertex_count(), 20u);
}

TEST(Tiling, TransitivitySmokeTest) {
  const auto big = generate_tiling(5, 4, geom::Isometry::identity(2), Region::ball(5.5));
  const auto& g = big.graph;
  std::mt19937_64 rng(4);
  std::vector<VertexId> near;
  for (VertexId v = 1; v < g.vertex_count(); ++v)
    if (geom::hyperbolic_distance(g.vertex(0), g.vertex(v)) < 2.0) near.push_back(v);
  ASSERT_FALSE(near.empty());
  for (int trial = 0; trial < 5; ++trial) {
    const VertexId v = near[rng() % near.size()];
    const auto moved = generate_tiling(5, 4, big.frames[v], Region::ball(2.5)).graph;
    auto match = [&](const Point& p) -> std::optional<VertexId> {
      for (VertexId w = 0; w < g.vertex_count(); ++w)
        if (geom::hyperbolic_distance(p, g.vertex(w)) < 1e-6) return w;
      return std::nullopt;
    };
    std::vector<std::optional<VertexId>> image(moved.vertex_count());
    std::size_t matched = 0;
    for (VertexId w = 0; w < moved.vertex_count(); ++w) matched += (image[w] = match(moved.vertex(w))).has_value();
    EXPECT_GE(static_cast<double>(matched), 0.99 * static_cast<double>(moved.vertex_count()));
    std::set<std::pair<VertexId, VertexId>> edges;
    for (const auto& e : g.edges()) edges.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
    std::size_t edge_hits = 0;
    for (const auto& e : moved.edges())
      if (image[e.u] && image[e.v])
        edge_hits += edges.count({std::min(*image[e.u], *image[e.v]), std::max(*image[e.u], *image[e.v])});
    EXPECT_GE(static_cast<double>(edge_hits), 0.99 * static_cast<double>(moved.edge_count()));
  }
}

TEST(SlabLattice, Path) {
  const auto g = gen_slab_lattice(2, 1.0, 2.0);
  EXPECT_EQ(g.vertex_count(), 5u);
  EXPECT_EQ(g.edge_count(), 4u);
}

TEST(SlabLattice, Grid) {
  const auto g = gen_slab_lattice(3, 1.0, 2.0);
  EXPECT_EQ(g.vertex_count(), 25u);
  EXPECT_EQ(g.edge_count(), 40u);
}

TEST(SlabLattice, DegreeBound) {
  for (int d = 2; d <= 4; ++d) {
    const auto g = gen_slab_lattice(d, 0.5, 2.0);
    for (int deg : degrees(g)) EXPECT_LE(deg, 2 * (d - 1));
    for (const auto& p : g.vertices()) EXPECT_EQ(p.height(), 1.0);
  }
}

TEST(SlabLattice, RejectsTinyExtent) { EXPECT_THROW(gen_slab_lattice(2, 1.0, 0.5), DomainError); }

TEST(Clip, GraphBelowSlabIsUnchanged) {
  const auto g = gen_tiling_h2(5, 4, 3.0);
  const auto phi = geom::Isometry::phi(1e-3, geom::rotation2(0.3));
  const auto s = clip_to_slab(g, phi, geom::Slab(1.0));
  const auto moved = transformed(g, phi);
  double top = 0;
  for (const auto& p : moved.vertices()) top = std::max(top, p.height());
  ASSERT_LT(top * std::exp(tiling_edge_length(5, 4)), 1.0);
  EXPECT_EQ(s.vertex_count(), g.vertex_count());
  EXPECT_EQ(s.fragment_count(), g.edge_count());
  for (VertexId v = 0; v < s.vertex_count(); ++v) EXPECT_TRUE(s.is_original(v));
}

TEST(Clip, VerticalEdge) {
  const EmbeddedGraph g(2, {Point({0.0}, 0.5), Point({0.0}, 2.0)}, {{0, 1}}, 0, GraphMeta{});
  const auto s = clip_to_band(g, 0.0, 1.0);
  ASSERT_EQ(s.fragment_count(), 1u);
  ASSERT_EQ(s.vertex_count(), 2u);
  const auto& f = s.fragment(0);
  const VertexId top = s.is_original(f.u) ? f.v : f.u;
  EXPECT_EQ(s.position(top).height(), 1.0);
  EXPECT_FALSE(s.is_original(top));
}

TEST(Clip, ArcCrossingTwice) {
  // semicircle of centre 0, radius sqrt(1.25) meets height 1 at x = +-0.5
  const EmbeddedGraph g(2, {Point({-1.0}, 0.5), Point({1.0}, 0.5)}, {{0, 1}}, 0, GraphMeta{});
  const auto s = clip_to_band(g, 0.0, 1.0);
  ASSERT_EQ(s.fragment_count(), 2u);
  EXPECT_EQ(s.fragment(0).parent, s.fragment(1).parent);
  std::vector<double> xs;
  for (VertexId v = 0; v < s.vertex_count(); ++v)
    if (!s.is_original(v)) {
      EXPECT_NEAR(s.position(v).height(), 1.0, 1e-12);
      xs.push_back(s.position(v).horizontal(0));
    }
  std::sort(xs.begin(), xs.end());
  ASSERT_EQ(xs.size(), 2u);
  EXPECT_NEAR(xs[0], -0.5, 1e-12);
  EXPECT_NEAR(xs[1], 0.5, 1e-12);
}

TEST(Clip, FragmentsLieOnTheirParents) {
  const auto g = gen_tiling_h2(5, 4, 4.0);
  const auto phi = geom::Isometry::phi(0.4, geom::rotation2(1.0));
  const auto moved = transformed(g, phi);
  const auto s = clip_to_band(moved, 0.0, 1.0);
  std::size_t crossing = 0;
  for (const auto& f : s.fragments()) {
    const auto& e = moved.edges()[f.parent];
    const Point a = moved.vertex(e.u), b = moved.vertex(e.v);
    for (VertexId x : {f.u, f.v}) {
      const Point p = s.position(x);
      EXPECT_NEAR(geom::hyperbolic_distance(a, p) + geom::hyperbolic_distance(p, b), geom::hyperbolic_distance(a, b),
                  1e-9);
      EXPECT_LE(p.height(), 1.0 + 1e-12);
      if (!s.is_original(x)) {
        ++crossing;
        EXPECT_NEAR(p.height(), 1.0, 1e-9);
      }
    }
  }
  EXPECT_GT(crossing, 0u);
}

TEST(Clip, Idempotent) {
  const auto g = gen_tiling_h2(5, 4, 4.0);
  const auto s = clip_to_slab(g, geom::Isometry::phi(0.5, geom::rotation2(0.2)), geom::Slab(1.0));
  const auto again = clip_to_band(s.as_embedded_graph(), 0.0, 1.0);
  EXPECT_EQ(again.vertex_count(), s.vertex_count());
  EXPECT_EQ(again.fragment_count(), s.fragment_count());
  for (VertexId v = 0; v < s.vertex_count(); ++v) EXPECT_EQ(again.position(v), s.position(v));
}

TEST(Constants, LatticeA) { EXPECT_NEAR(compute_a(gen_slab_lattice(2, 1.0, 3.0)), 1.0, 1e-12); }

TEST(Constants, VerticalEdgesHaveZeroA) {
  const EmbeddedGraph g(2, {Point({0.0}, 0.5), Point({0.0}, 1.0), Point({0.0}, 0.25)}, {{0, 1}, {0, 2}}, 0,
                        GraphMeta{});
  EXPECT_EQ(compute_a(g), 0.0);
}

TEST(Constants, HeightRatioBound) {
  const auto g = gen_tiling_h2(5, 4, 4.0);
  const auto c = height_constants(g);
  const double ell = tiling_edge_length(5, 4);
  EXPECT_LE(c.h_empirical, std::exp(ell) * (1 + 1e-12));
  EXPECT_NEAR(c.h_bound, std::exp(ell), 1e-12);
  EXPECT_LE(c.a_empirical, c.a_bound + 1e-12);
  EXPECT_NEAR(c.a_bound, std::sinh(ell), 1e-12);
}

TEST(GraphIo, RoundTripIsBitStable) {
  const auto g = transformed(gen_tiling_h2(5, 4, 3.0), geom::Isometry::phi(0.37, geom::rotation2(0.9)));
  const auto path = std::filesystem::temp_directory_path() / "hypgrowth_roundtrip.json";
  save_graph(g, path);
  const auto back = load_graph(path);
  std::filesystem::remove(path);
  ASSERT_EQ(back.vertex_count(), g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    EXPECT_EQ(back.vertex(v).height(), g.vertex(v).height());
    EXPECT_EQ(back.vertex(v).horizontal(0), g.vertex(v).horizontal(0));
  }
  EXPECT_EQ(back.edges(), g.edges());
  EXPECT_EQ(to_json(back), to_json(g));
  EXPECT_EQ(graph_hash(back), graph_hash(g));
}

TEST(Family, GuardBandCoverage) {
  const auto fam = make_family("{5,4}");
  const auto g = fam->generate(geom::Isometry::identity(2), Region::band_box(2.0, 1.0 / 16, 1.0));
  const std::vector<double> center{0.0};
  EXPECT_NO_THROW(g.meta().coverage->require(center, 2.0, 1.0 / 16, 1.0, g.meta().max_edge_length));
  EXPECT_THROW(g.meta().coverage->require(center, 3.0, 1.0 / 16, 1.0, g.meta().max_edge_length), GuardBandError);
  EXPECT_THROW(g.meta().coverage->require(center, 1.0, 1.0 / 64, 1.0, g.meta().max_edge_length), GuardBandError);
}

TEST(Family, ParsesSpecs) {
  EXPECT_EQ(make_family("{3,7}")->dimension(), 2);
  EXPECT_EQ(make_family("slab-lattice-d3")->dimension(), 3);
  EXPECT_THROW(make_family("{4,4}"), DomainError);
  EXPECT_THROW(make_family("cubic"), DomainError);
}
