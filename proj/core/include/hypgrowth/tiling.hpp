#pragma once

#include <cstddef>
#include <vector>

#include "hypgrowth/embedded_graph.hpp"
#include "hypgrowth/isometry.hpp"

namespace hypgrowth::graph {

inline constexpr std::size_t kDefaultVertexCap = 2'000'000;

double tiling_edge_length(int p, int q);
double tiling_face_circumradius(int p, int q);

// Where a generated graph must be complete.
struct Region {
  enum class Kind { ball, band_box };
  Kind kind = Kind::ball;
  double radius = 1.0;      // ball radius about the placed origin, or box half-width
  double lo = 0.0, hi = 1.0;  // band heights for band_box (box centred on the vertical axis)

  static Region ball(double radius);
  static Region band_box(double half_width, double lo, double hi);
};

struct TilingResult {
  EmbeddedGraph graph;
  // frames[v] maps the standard origin o to vertex v (placement included).
  std::vector<geom::Isometry> frames;
};

// Vertex graph of the {p,q} tiling of H^2 placed by `placement`, grown breadth-first from the
// placed origin through rotation/half-turn words, deduplicated to 1e-7.
TilingResult generate_tiling(int p, int q, const geom::Isometry& placement, const Region& region,
                             std::size_t vertex_cap = kDefaultVertexCap);

// Every vertex within hyperbolic distance `radius` of o and every edge among them.
EmbeddedGraph gen_tiling_h2(int p, int q, double radius, std::size_t vertex_cap = kDefaultVertexCap);

// Grid of spacing `spacing` at height 1 with straight horizontal edges (control model).
EmbeddedGraph gen_slab_lattice(int d, double spacing, double extent);

}  // namespace hypgrowth::graph
