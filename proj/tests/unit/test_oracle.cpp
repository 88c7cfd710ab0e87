#include <gtest/gtest.h>

#include <cmath>

#include "hypgrowth/errors.hpp"
#include "hypgrowth/gadgets.hpp"
#include "hypgrowth/max_flow.hpp"
#include "hypgrowth/oracle.hpp"
#include "hypgrowth/oracle_suite.hpp"
#include "hypgrowth/rng.hpp"
#include "hypgrowth/sausage.hpp"

using namespace hypgrowth;
using namespace hypgrowth::oracle;
using perc::Configuration;
using perc::SphereTarget;
using perc::VertexTarget;

namespace {

PolyInP poly(std::initializer_list<int> c) {
  std::vector<mpq_class> v;
  for (int x : c) v.emplace_back(x);
  return PolyInP(v);
}

EventSpec reach(VertexId from, VertexId to) { return EventSpec::connects({from}, VertexTarget{{to}}); }

}  // namespace

TEST(Polynomial, Arithmetic) {
  const auto p = PolyInP::p();
  EXPECT_EQ(p * p - p, poly({0, -1, 1}));
  EXPECT_EQ((p * p * p).derivative(), poly({0, 0, 3}));
  EXPECT_EQ(PolyInP::from_counts({0, 2, 1}, 2), poly({0, 2, -1}));
  EXPECT_EQ(poly({1, 1})(mpq_class(1, 2)), mpq_class(3, 2));
  EXPECT_TRUE((p - p).is_zero());
}

TEST(ExactProb, SingleEdge) {
  const auto g = find_gadget("single-edge");
  EXPECT_EQ(exact_prob(g.graph, reach(0, 1)), PolyInP::p());
}

TEST(ExactProb, SeriesPair) {
  const auto g = find_gadget("series-pair");
  EXPECT_EQ(exact_prob(g.graph, reach(0, 2)), poly({0, 0, 1}));
}

TEST(ExactProb, ParallelPair) {
  const auto g = find_gadget("parallel-pair");
  EXPECT_EQ(exact_prob(g.graph, reach(0, 1)), poly({0, 2, -1}));
}

TEST(ExactProb, Wheatstone) {
  const auto g = find_gadget("wheatstone");
  EXPECT_EQ(exact_prob(g.graph, reach(0, 3)), poly({0, 0, 2, 2, -5, 2}));
}

TEST(ExactProb, CapIsEnforced) {
  const auto g = find_gadget("wheatstone");
  EXPECT_THROW(exact_prob(g.graph, reach(0, 3), 4), OracleCapError);
}

TEST(ExactProb, MonteCarloAgreement) {
  const auto g = find_gadget("k4");
  ASSERT_EQ(g.graph.parent_count(), 6u);
  const auto a = reach(0, 3);
  const double p = 0.4, exact = exact_prob(g.graph, a).value(p);
  const std::size_t n = 100000;
  std::size_t hits = 0;
  for (std::size_t t = 0; t < n; ++t)
    hits += event_occurs(g.graph, a, Configuration::sample(g.graph, p, derive_seed(17, {t})));
  const double freq = static_cast<double>(hits) / static_cast<double>(n);
  EXPECT_LT(std::abs(freq - exact), 4.0 * std::sqrt(exact * (1 - exact) / static_cast<double>(n)));
}

TEST(Pivotal, SeriesPair) {
  const auto g = find_gadget("series-pair");
  const auto e = pivotal_expectation(g.graph, reach(0, 2));
  EXPECT_EQ(e.expected_n, poly({0, 2}));
  EXPECT_EQ(e.expected_n_on_a, poly({0, 0, 2}));
}

TEST(Pivotal, SingleEdgeAlwaysPivotal) {
  const auto g = find_gadget("single-edge");
  EXPECT_EQ(pivotal_expectation(g.graph, reach(0, 1)).expected_n, poly({1}));
}

TEST(Pivotal, ComplementHasSamePivotals) {
  const auto g = find_gadget("wheatstone");
  const EventTable a(g.graph, reach(0, 3));
  const auto complement = EventSpec::custom([&](std::uint64_t m) { return !a[m]; }, false, "not");
  EXPECT_EQ(pivotal_expectation(g.graph, reach(0, 3)).expected_n,
            pivotal_expectation(g.graph, complement).expected_n);
}

TEST(Russo, SeriesPair) {
  const auto g = find_gadget("series-pair");
  const auto r = verify_russo(g.graph, reach(0, 2));
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.derivative, poly({0, 2}));
}

TEST(Russo, WholeSpace) {
  const auto g = find_gadget("triangle");
  const auto r = verify_russo(g.graph, EventSpec::always());
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(r.derivative.is_zero());
  EXPECT_TRUE(r.expectation.is_zero());
}

TEST(Russo, SlabGadgetSphereEvent) {
  for (const auto& g : slab_gadgets())
    for (const auto& e : g.events()) EXPECT_TRUE(verify_russo(g.graph, e).holds) << g.name << " " << e.label;
}

TEST(Bk, ParallelPairWithItself) {
  const auto g = find_gadget("parallel-pair");
  const auto r = verify_bk(g.graph, reach(0, 1), reach(0, 1));
  EXPECT_EQ(r.prob_ab, poly({0, 0, 1}));
  EXPECT_EQ(r.violations, 0u);
  EXPECT_EQ(r.points_checked, 99u);
  EXPECT_EQ(r.prob_a(mpq_class(1, 2)) * r.prob_b(mpq_class(1, 2)), mpq_class(9, 16));
}

TEST(Bk, WholeSpaceIsNeutral) {
  const auto g = find_gadget("wheatstone");
  const auto r = verify_bk(g.graph, reach(0, 3), EventSpec::always());
  EXPECT_EQ(r.prob_ab, r.prob_a);
  EXPECT_EQ(r.violations, 0u);
}

TEST(Bk, DisjointSupportsFactor) {
  const auto g = find_gadget("path4");
  const auto r = verify_bk(g.graph, reach(0, 1), reach(2, 4));
  EXPECT_EQ(r.prob_ab, r.prob_a * r.prob_b);
  EXPECT_EQ(r.min_margin, 0);
}

TEST(RussoIntegral, DegenerateInterval) {
  const auto g = find_gadget("wheatstone");
  const auto r = verify_russo_integral(g.graph, reach(0, 3), 0.3, 0.3 + 1e-9);
  EXPECT_NEAR(r.margin, 0.0, 1e-8);
  EXPECT_NEAR(r.rhs / r.f_alpha, 1.0, 1e-7);
  EXPECT_TRUE(r.holds);
}

TEST(RussoIntegral, SlabGadgets) {
  for (const auto& g : slab_gadgets())
    for (double r : g.radii) {
      const auto rep = verify_russo_integral(g.graph, EventSpec::reaches_sphere(g.graph, g.seed, r), 0.2, 0.4);
      EXPECT_TRUE(rep.holds) << g.name << " r=" << r << " margin " << rep.margin;
    }
}

TEST(Sausage, OpenPathBothEdgesPivotal) {
  const auto g = make_gadget("path", {{0, 1}, {1, 1}, {2, 1}}, {{0, 1}, {1, 2}}, 2, {});
  const auto d = sausage_decompose(g.graph, Configuration::from_states({1, 1}), 0, SphereTarget{{0.0}, 2.0});
  ASSERT_EQ(d.pivotal_edges.size(), 2u);
  ASSERT_EQ(d.rho.size(), 2u);
  EXPECT_EQ(d.rho[0], 0.0);
  EXPECT_EQ(d.rho[1], 0.0);
  EXPECT_TRUE(d.menger_ok);
}

TEST(Sausage, ThetaHasOnePivotal) {
  const auto g = find_gadget("theta");
  const auto d = sausage_decompose(g.graph, Configuration::from_states({1, 1, 1, 1, 1}), 0, SphereTarget{{0.0}, 3.0});
  ASSERT_EQ(d.pivotal_edges.size(), 1u);
  EXPECT_EQ(d.pivotal_edges[0].parent, 4u);
  EXPECT_EQ(d.pivotal_edges[0].x, 3u);
  EXPECT_EQ(d.pivotal_edges[0].y, 4u);
  EXPECT_NEAR(d.rho[0], 2.0, 1e-12);
  EXPECT_EQ(d.flows[0], 2);
  EXPECT_TRUE(d.menger_ok);
}

TEST(Sausage, DoubledPathHasNone) {
  const auto g = find_gadget("doubled-path");
  const auto d =
      sausage_decompose(g.graph, Configuration::from_states({1, 1, 1, 1, 1, 1}), 0, SphereTarget{{0.0}, 3.0});
  EXPECT_TRUE(d.pivotal_edges.empty());
  EXPECT_TRUE(d.rho.empty());
}

TEST(Saus, ImpossibleEventIsVacuous) {
  const auto g = find_gadget("path4");
  const auto rep =
      verify_saus(g.graph, g.seed, {50.0}, {mpq_class(1, 2)}, gadget_dominating_curve(g.graph));
  EXPECT_EQ(rep.conditioned_configs, 0u);
  EXPECT_EQ(rep.violations, 0u);
}

TEST(Saus, ParallelSeriesHolds) {
  const auto g = find_gadget("parallel-series");
  const auto rep = verify_saus(g.graph, g.seed, g.radii, {mpq_class(1, 10), mpq_class(1, 2), mpq_class(9, 10)},
                               gadget_dominating_curve(g.graph));
  EXPECT_GT(rep.tuples_checked, 0u);
  EXPECT_EQ(rep.violations, 0u);
  EXPECT_TRUE(rep.menger_ok);
}

TEST(Saus, SlabGadgetsHold) {
  for (const auto& g : slab_gadgets()) {
    const auto rep = verify_saus(g.graph, g.seed, g.radii, {mpq_class(3, 10), mpq_class(7, 10)},
                                 gadget_dominating_curve(g.graph));
    EXPECT_EQ(rep.violations, 0u) << g.name;
    EXPECT_TRUE(rep.menger_ok) << g.name;
  }
}

TEST(MaxFlow, CountsEdgeDisjointPaths) {
  EXPECT_EQ(edge_disjoint_paths(2, {{0, 1}, {0, 1}, {0, 1}}, 0, 1), 3);
  EXPECT_EQ(edge_disjoint_paths(2, {{0, 1}, {0, 1}, {0, 1}}, 0, 1, 2), 2);
  EXPECT_EQ(edge_disjoint_paths(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}}, 0, 3), 1);
  EXPECT_EQ(edge_disjoint_paths(3, {{0, 1}}, 0, 2), 0);
}

TEST(Gadgets, JsonRoundTrip) {
  for (const auto& g : gadget_corpus()) {
    const auto back = gadget_from_json(gadget_to_json(g));
    EXPECT_EQ(back.name, g.name);
    EXPECT_EQ(back.graph.parent_count(), g.graph.parent_count());
    EXPECT_EQ(back.graph.fragment_count(), g.graph.fragment_count());
    EXPECT_EQ(back.radii, g.radii);
    EXPECT_EQ(exact_prob(back.graph, back.events().front()), exact_prob(g.graph, g.events().front()));
  }
}

TEST(Suite, RandomEventsAreIncreasing) {
  const auto corpus = gadget_corpus();
  const auto pairs = random_event_pairs(corpus, 40, 3);
  ASSERT_EQ(pairs.size(), 40u);
  for (const auto& pair : pairs) {
    const auto& g = corpus[pair.gadget].graph;
    EXPECT_TRUE(EventTable(g, pair.a).is_increasing()) << pair.a.label;
    EXPECT_TRUE(EventTable(g, pair.b).is_increasing()) << pair.b.label;
  }
}
