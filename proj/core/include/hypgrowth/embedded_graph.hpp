#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypgrowth/geometry.hpp"
#include "hypgrowth/isometry.hpp"

namespace hypgrowth::graph {

using geom::Point;
using VertexId = std::uint32_t;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

enum class EdgeShape { geodesic, straight };

// The part of H^d on which a generated graph is known to contain every edge.
struct Coverage {
  enum class Kind { complete, ball, band_box };
  Kind kind = Kind::complete;
  Point center;        // ball: hyperbolic centre; band_box: horizontal centre
  double radius = 0;   // ball radius or box half-width
  double lo = 0;       // band_box height range
  double hi = 0;

  static Coverage complete();
  static Coverage ball(const Point& center, double radius);
  static Coverage band_box(const Point& center, double half_width, double lo, double hi);

  // Throws GuardBandError unless every edge meeting [c-r, c+r]^{d-1} x [lo, hi] is present.
  void require(std::span<const double> box_center, double r, double lo, double hi,
               double max_edge_length) const;
};

struct GraphMeta {
  std::string family = "custom";
  std::map<std::string, std::string> params;
  EdgeShape shape = EdgeShape::geodesic;
  double max_edge_length = 0.0;
  double generation_radius = 0.0;
  // Absent means unknown, which fails every guard check.
  std::optional<Coverage> coverage = Coverage::complete();
};

class EmbeddedGraph {
 public:
  EmbeddedGraph() = default;
  EmbeddedGraph(int dimension, std::vector<Point> vertices, std::vector<Edge> edges,
                VertexId origin_index, GraphMeta meta);

  int dimension() const { return dim_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Point>& vertices() const { return vertices_; }
  const Point& vertex(VertexId v) const { return vertices_[v]; }
  const std::vector<Edge>& edges() const { return edges_; }
  VertexId origin_index() const { return origin_; }
  const GraphMeta& meta() const { return meta_; }
  GraphMeta& meta() { return meta_; }

  std::vector<std::vector<VertexId>> adjacency() const;
  bool is_connected() const;
  // Simple: no loops, no duplicate edges, indices in range.
  bool is_simple() const;
  double longest_edge() const;  // hyperbolic length for geodesics, path length for straight edges

 private:
  int dim_ = 2;
  std::vector<Point> vertices_;
  std::vector<Edge> edges_;
  VertexId origin_ = 0;
  GraphMeta meta_;
};

// Phi[G]; straight-edge graphs only accept similarities.
EmbeddedGraph transformed(const EmbeddedGraph& g, const geom::Isometry& phi);

// Subgraph induced by `keep`, with the origin required to survive.
EmbeddedGraph induced_subgraph(const EmbeddedGraph& g, const std::vector<bool>& keep);

struct HeightConstants {
  double a_empirical = 0.0;  // max d_eth between endpoints of an edge meeting L
  double a_bound = 0.0;      // sinh(L_max) for geodesic graphs
  double h_empirical = 1.0;  // max height ratio along a single edge
  double h_bound = 1.0;      // exp(L_max)
};

double compute_a(const EmbeddedGraph& g);
double compute_H(const EmbeddedGraph& g);
HeightConstants height_constants(const EmbeddedGraph& g);

}  // namespace hypgrowth::graph
