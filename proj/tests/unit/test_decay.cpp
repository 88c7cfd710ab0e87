#include <gtest/gtest.h>

#include <cmath>

#include "hypgrowth/decay_fit.hpp"
#include "hypgrowth/errors.hpp"
#include "hypgrowth/family.hpp"
#include "hypgrowth/gadgets.hpp"
#include "hypgrowth/gp_estimate.hpp"
#include "hypgrowth/menshikov.hpp"
#include "hypgrowth/oracle.hpp"
#include "hypgrowth/renewal.hpp"
#include "hypgrowth/thresholds.hpp"
#include "hypgrowth/tiling.hpp"

using namespace hypgrowth;
using namespace hypgrowth::decay;

TEST(Fit, ExactExponential) {
  std::vector<double> r, y;
  for (int i = 1; i <= 8; ++i) {
    r.push_back(i);
    y.push_back(std::exp(-0.7 * i));
  }
  const auto f = fit_decay(r, y);
  EXPECT_NEAR(f.psi, 0.7, 1e-6);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
  EXPECT_NEAR(f.intercept, 0.0, 1e-9);
  EXPECT_EQ(f.cells_used, 8u);
}

TEST(Fit, ConstantCurve) {
  const auto f = fit_decay({1, 2, 3, 4, 5}, {0.5, 0.5, 0.5, 0.5, 0.5});
  EXPECT_NEAR(f.psi, 0.0, 1e-12);
  EXPECT_NEAR(f.intercept, std::log(0.5), 1e-12);
}

TEST(Fit, NoiseFloorDropsCells) {
  const auto f = fit_decay({1, 2, 3, 4, 5, 6}, {0.5, 0.25, 0.125, 0.0625, 1e-9, 0.0}, 1e-6);
  EXPECT_EQ(f.cells_used, 4u);
  EXPECT_NEAR(f.psi, std::log(2.0), 1e-12);
  EXPECT_THROW(fit_decay({1, 2, 3}, {0.5, 0.25, 0.125}), DomainError);
}

TEST(Estimate, ZeroAndOne) {
  const auto family = graph::make_family("{5,4}");
  const auto positions = sample_positions(2, 3, 2);
  GpOptions opt;
  opt.trials = 200;
  const auto curve = estimate_gp(*family, {0.0, 1.0}, {0.5, 1.0, 2.0}, positions, opt);
  for (std::size_t ri = 0; ri < 3; ++ri) {
    EXPECT_EQ(curve.estimate[0][ri], 0.0);
    EXPECT_EQ(curve.estimate[1][ri], 1.0);
  }
}

TEST(Estimate, ThickOriginDominatedAndZeroRadius) {
  const auto family = graph::make_family("{5,4}");
  const auto positions = sample_positions(2, 4, 8);
  GpOptions opt;
  opt.trials = 1000;
  const auto t = estimate_thick_origin_tail(*family, 0.3, 1.0, {0.0, 1.0, 2.0}, positions, opt);
  EXPECT_GT(t.domination_checks, 0u);
  EXPECT_EQ(t.domination_violations, 0u);
  for (std::size_t cell = 0; cell < positions.size(); ++cell) EXPECT_EQ(t.curve.frequency(cell, 0, 0), 1.0);
}

TEST(ToyRecursion, SeriesValue) {
  EXPECT_NEAR(s_of_x1(0.1), 1.1625, 1e-3);
  EXPECT_LT(s_of_x1(1e-8), 1e-6);
  EXPECT_LT(s_of_x1(0.01), s_of_x1(0.1));
  double prev = 0.0;
  for (int i = 1; i <= 20; ++i) {
    const double s = s_of_x1(i / 21.0);
    EXPECT_GT(s, prev);
    prev = s;
  }
}

TEST(ToyRecursion, DecreaseMatchesSeries) {
  for (double x1 : {0.1, 0.01}) {
    const auto trace = menshikov_recursion(0.9, 1.0, squaring_toy_model(x1, 1.0), std::nullopt);
    EXPECT_EQ(trace.status, RecursionTrace::Status::completed) << trace.reason;
    EXPECT_NEAR(trace.total_decrease(), s_of_x1(x1), 1e-12);
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
      EXPECT_NEAR(trace.steps[i].g, std::pow(x1, std::pow(2.0, static_cast<double>(i))), 1e-15);
      EXPECT_TRUE(trace.steps[i].squared);
    }
  }
}

TEST(ToyRecursion, FloorAborts) {
  const auto trace = menshikov_recursion(0.5, 1.0, squaring_toy_model(0.1, 1.0), 0.0);
  EXPECT_EQ(trace.status, RecursionTrace::Status::aborted);
}

TEST(Recursion, OneStepFormulas) {
  const auto half = menshikov_recursion(0.9, 1.0, [](double, double) { return 0.5; }, std::nullopt, 2);
  ASSERT_GE(half.steps.size(), 2u);
  EXPECT_DOUBLE_EQ(half.steps[1].r, 2.0);
  const double inv_e = std::exp(-1.0);
  const auto e = menshikov_recursion(3.0, 1.0, [&](double, double) { return inv_e; }, std::nullopt, 2);
  ASSERT_GE(e.steps.size(), 2u);
  EXPECT_NEAR(e.steps[1].p, 3.0 - 6.0 * inv_e, 1e-14);
}

TEST(Wald, ConstantJump) {
  for (double c : {0.3, 1.0, 2.5}) {
    const EmpiricalTail tail({c, c + 10.0}, {1.0, 0.0});
    const double a = 0.5, r = 2.0;
    const auto rep = renewal_wald_check(tail, a, r, 1000, 3);
    EXPECT_EQ(rep.mean_k, std::ceil((r + a) / (a + std::min(c, r))));
    EXPECT_NEAR(rep.residual, 0.0, 1e-12);
    EXPECT_TRUE(rep.wald_ok);
    EXPECT_TRUE(rep.bound_ok);
  }
}

TEST(Wald, ZeroRadius) {
  const EmpiricalTail tail({1.0, 2.0}, {0.6, 0.2});
  const auto rep = renewal_wald_check(tail, 1.0, 0.0, 1000, 3);
  EXPECT_EQ(rep.mean_k, 1.0);
  EXPECT_NEAR(rep.mean_s_k, rep.mean_m_prime, 1e-12);
}

TEST(Wald, RandomTailWithinFourSe) {
  const EmpiricalTail tail({0.5, 1.0, 1.5, 2.0, 3.0}, {0.8, 0.5, 0.3, 0.1, 0.02});
  const auto rep = renewal_wald_check(tail, 0.4, 5.0, 200000, 11);
  EXPECT_TRUE(rep.wald_ok) << rep.residual << " se " << rep.residual_se;
  EXPECT_TRUE(rep.bound_ok);
}

TEST(Wald, DegenerateTailThrows) {
  EXPECT_THROW(renewal_wald_check(EmpiricalTail({1.0}, {0.0}), 0.0, 1.0, 100, 1), DomainError);
}

TEST(Functional, EqualParameters) {
  const std::vector<double> r{1, 2, 3}, est{0.5, 0.2, 0.05}, ci{0.01, 0.01, 0.01};
  const auto rep = functional_inequality_check(0.2, 0.2, r, est, ci, est, ci, 1.0);
  EXPECT_EQ(rep.failures, 0u);
  for (const auto& row : rep.rows) EXPECT_NEAR(row.lhs, row.rhs, 1e-15);
}

TEST(Functional, UnitBetaCurve) {
  const std::vector<double> r{1, 2, 4}, one{1, 1, 1}, zero{0, 0, 0};
  const double a = 0.5, gap = 0.1;
  const auto rep = functional_inequality_check(0.3, 0.3 + gap, r, one, zero, one, zero, a);
  for (std::size_t i = 0; i < r.size(); ++i)
    EXPECT_NEAR(rep.rows[i].rhs, std::exp(-gap * (r[i] / (a + r[i]) - 1.0)), 1e-12);
}

TEST(Thresholds, CrossingExtremes) {
  const auto g = graph::whole_graph(graph::gen_slab_lattice(3, 1.0, 4.0));
  const auto c = crossing_curve(g, {0.0, 1.0}, 50, 1);
  EXPECT_EQ(c.crossing[0], 0.0);
  EXPECT_EQ(c.crossing[1], 1.0);
  const std::vector<graph::VertexId> vs{*g.origin(), (*g.origin() + 3) % static_cast<graph::VertexId>(g.vertex_count())};
  EXPECT_EQ(two_point_curve(g, 1.0, vs, 20, 1), (std::vector<double>{1.0, 1.0}));
  EXPECT_EQ(two_point_curve(g, 0.0, vs, 20, 1), (std::vector<double>{1.0, 0.0}));
}

TEST(Thresholds, CrossingIsMonotone) {
  const auto g = graph::whole_graph(graph::gen_slab_lattice(3, 1.0, 6.0));
  const auto c = crossing_curve(g, {0.3, 0.4, 0.5, 0.6, 0.7}, 400, 2);
  for (std::size_t i = 1; i < c.crossing.size(); ++i) EXPECT_LE(c.crossing[i - 1], c.crossing[i]);
}

TEST(BoundaryPoint, TrivialCases) {
  const auto family = graph::make_family("{5,4}");
  const auto zero = estimate_boundary_point_prob(*family, 0.0, {3.0}, 3, 100, 1);
  EXPECT_EQ(zero.frequency[0], 1.0);
  for (std::size_t n = 1; n < zero.frequency.size(); ++n) EXPECT_EQ(zero.frequency[n], 0.0);
  const auto depth0 = estimate_boundary_point_prob(*family, 0.4, {3.0}, 0, 100, 1);
  ASSERT_EQ(depth0.frequency.size(), 1u);
  EXPECT_EQ(depth0.frequency[0], 1.0);
}

TEST(BoundaryPoint, CoupledMonotone) {
  const auto family = graph::make_family("{5,4}");
  const auto rep = estimate_boundary_point_prob(*family, 0.5, {1.0}, 3, 10000, 4);
  EXPECT_EQ(rep.coupling_violations, 0u);
  for (std::size_t n = 1; n < rep.frequency.size(); ++n) EXPECT_LE(rep.frequency[n], rep.frequency[n - 1]);
}

TEST(Estimate, EightEdgeGadgetAgreesWithOracle) {
  const auto g = oracle::find_gadget("wheel4");
  ASSERT_EQ(g.graph.parent_count(), 8u);
  const auto event = oracle::EventSpec::reaches_sphere(g.graph, g.seed, 1.0);
  const double p = 0.35, exact = oracle::exact_prob(g.graph, event).value(p);
  const std::size_t n = 100000;
  std::size_t hits = 0;
  for (std::size_t t = 0; t < n; ++t)
    hits += oracle::event_occurs(g.graph, event, perc::Configuration::sample(g.graph, p, 1000 + t));
  const double freq = static_cast<double>(hits) / static_cast<double>(n);
  EXPECT_LT(std::abs(freq - exact), 4.0 * std::sqrt(exact * (1 - exact) / static_cast<double>(n)) + 1e-12);
}
