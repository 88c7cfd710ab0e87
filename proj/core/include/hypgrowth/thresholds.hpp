#pragma once

#include <cstdint>
#include <vector>

#include "hypgrowth/family.hpp"
#include "hypgrowth/slab_graph.hpp"

namespace hypgrowth::decay {

struct CrossingCurve {
  double extent = 0.0;
  std::size_t trials = 0;
  std::vector<double> p_grid;
  std::vector<double> crossing;        // Pr(left-right open crossing) per grid p
  std::vector<double> first_crossing;  // per trial, the p at which the crossing first appears
  double median = 0.0;                 // p where the crossing probability reaches 1/2
};

struct PcEstimate {
  std::vector<CrossingCurve> curves;  // one per system size
  double lower = 0.0, upper = 0.0;    // union of the grid cells containing each size's median
  double point = 0.0;                 // mean of the per-size medians
};

// Left-right crossing of the lattice window [-extent, extent]^{d-1} for each size.  Per trial, edges
// are added in the order of their coupled uniforms and the first crossing is found by union-find
// (Newman-Ziff), so the whole curve in p comes from one pass.
PcEstimate estimate_pc(int dimension, const std::vector<double>& extents, const std::vector<double>& p_grid,
                       std::size_t trials, std::uint64_t seed, int threads = 0);

CrossingCurve crossing_curve(const graph::SlabGraph& g, const std::vector<double>& p_grid, std::size_t trials,
                             std::uint64_t seed, int threads = 0);

// Monte Carlo Pr(o <-> v) for each listed vertex.
std::vector<double> two_point_curve(const graph::SlabGraph& g, double p, const std::vector<graph::VertexId>& vertices,
                                    std::size_t trials, std::uint64_t seed, int threads = 0);

struct BoundaryPointReport {
  std::vector<double> radii;      // Euclidean radii of the half-balls H_1, H_2, ... about (x, 0)
  std::vector<double> frequency;  // index n: Pr(C(o) meets H_n), index 0 is H_0 = everything
  std::vector<double> ci;
  std::uint64_t coupling_violations = 0;  // samples meeting H_{n+1} but not H_n
  std::size_t graph_vertices = 0;
};

// Nested half-spaces H_n = {|y - (x,0)| < rho_1 2^{1-n}} with rho_1 = |(x,0) - o| / 2; the graph is
// generated on a ball about o reaching the top of H_{n_max} plus two edge lengths.
BoundaryPointReport estimate_boundary_point_prob(const graph::GraphFamily& family, double p,
                                                 const std::vector<double>& x, int n_max, std::size_t trials,
                                                 std::uint64_t seed, int threads = 0);

}  // namespace hypgrowth::decay
