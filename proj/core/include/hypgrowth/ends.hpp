#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hypgrowth/embedded_graph.hpp"
#include "hypgrowth/family.hpp"
#include "hypgrowth/slab_graph.hpp"

namespace hypgrowth::ends {

using graph::VertexId;

// Stack of slabs [y_min, 2^-k], k = 0..k_max, cut from one graph in standard position.  Parent ids
// are the edge ids of the graph, so one uniform per edge drives every level.
class SlabTower {
 public:
  SlabTower(const graph::EmbeddedGraph& g, double r, int k_max, std::optional<double> y_min = std::nullopt);

  int k_max() const { return static_cast<int>(levels_.size()) - 1; }
  double r() const { return r_; }
  double y_min() const { return y_min_; }
  const graph::SlabGraph& level(int k) const { return levels_[static_cast<std::size_t>(k)]; }
  // Probe set B_r intersected with the original vertices that lie in level k.
  const std::vector<VertexId>& probes(int k) const { return probes_[static_cast<std::size_t>(k)]; }

 private:
  double r_;
  double y_min_;
  std::vector<graph::SlabGraph> levels_;
  std::vector<std::vector<VertexId>> probes_;
};

struct TowerCluster {
  std::size_t vertex_count = 0;
  double proj_diameter = 0.0;       // Euclidean
  double proj_diameter_linf = 0.0;
  double size_r = 0.0;
};

struct TowerLevel {
  int k = 0;
  std::vector<TowerCluster> clusters;  // clusters meeting the probe set
  bool qualifies = false;              // some cluster with projection diameter >= delta
};

struct SlabTowerReport {
  double r = 0.0, delta = 0.0;
  std::vector<TowerLevel> levels;
  bool monotone = true;         // qualifies is non-increasing in k
  bool size_consistent = true;  // size_r >= proj_diameter_linf / 2 on every cluster
  bool metric_consistent = true;  // linf <= l2 <= sqrt(d-1) linf
};

// Open set given by per-edge states of the underlying graph.
SlabTowerReport slab_tower(const SlabTower& tower, const std::vector<std::uint8_t>& edge_open, double delta);

// Guarded convenience: builds the tower from the graph (whose coverage must reach r + delta on
// [2^-(k_max+3), 1]) and evaluates it.
SlabTowerReport slab_tower(const graph::EmbeddedGraph& g, const std::vector<std::uint8_t>& edge_open, double r,
                           double delta, int k_max);

struct ScalingReport {
  int k = 0;
  std::size_t fragments = 0;
  std::size_t fragment_mismatches = 0;
  double max_coordinate_error = 0.0;  // relative
  std::size_t clusters = 0;
  double max_report_error = 0.0;      // relative error of 2^k size_r and projection diameters
  bool passed = false;
};

// Clip to L^{2^-k} then scale by 2^k, against scale by 2^k then clip to L; edge-matched states.
ScalingReport scaling_equivariance_check(const graph::EmbeddedGraph& g, int k, double p, std::uint64_t seed);

struct SurveyRow {
  double delta = 0.0;
  int k = 0;
  double frequency = 0.0;
  double ci = 0.0;
  double bound = 0.0;  // (2^k)^{d-1} alpha e^{-phi delta 2^{k-1}}
};

struct SurveyReport {
  double p = 0.0, r = 0.0;
  std::size_t trials = 0;
  std::vector<SurveyRow> rows;
  std::uint64_t monotonicity_violations = 0;  // per sample, per delta
  bool non_increasing = true;                 // empirical frequency non-increasing in k for every delta
  std::size_t graph_vertices = 0;
};

struct TailFit {
  double alpha = 1.0;
  double phi = 0.0;
};

SurveyReport end_boundary_survey(const graph::GraphFamily& family, double p, const std::vector<double>& deltas,
                                 double r, int k_max, std::size_t trials, std::uint64_t seed,
                                 const std::optional<TailFit>& fit, int threads = 0);

}  // namespace hypgrowth::ends
