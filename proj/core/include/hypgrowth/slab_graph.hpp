#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hypgrowth/embedded_graph.hpp"
#include "hypgrowth/geometry.hpp"
#include "hypgrowth/isometry.hpp"

namespace hypgrowth::graph {

using ParentId = std::uint32_t;

struct Fragment {
  VertexId u = 0;
  VertexId v = 0;
  ParentId parent = 0;
};

inline constexpr std::int64_t kCrossingVertex = -1;

// Phi[G] intersected with a height band: original vertices inside the band, crossing vertices
// where edges leave it, and fragments that remember their parent edge.  Percolation states live
// on parents, so fragments of one parent are always open or closed together.
class SlabGraph {
 public:
  SlabGraph() = default;
  SlabGraph(int dimension, std::vector<Point> positions, std::vector<std::int64_t> original,
            std::vector<Fragment> fragments, std::size_t parent_count, std::optional<VertexId> origin);

  int dimension() const { return dim_; }
  std::size_t vertex_count() const { return positions_.size(); }
  std::size_t fragment_count() const { return fragments_.size(); }
  std::size_t parent_count() const { return parent_count_; }
  const Point& position(VertexId v) const { return positions_[v]; }
  const std::vector<Point>& positions() const { return positions_; }
  std::int64_t original_index(VertexId v) const { return original_[v]; }
  bool is_original(VertexId v) const { return original_[v] != kCrossingVertex; }
  const std::vector<Fragment>& fragments() const { return fragments_; }
  const Fragment& fragment(std::size_t f) const { return fragments_[f]; }
  std::optional<VertexId> origin() const { return origin_; }
  // d_eth from the vertical axis through o, cached per vertex.
  double deth_origin(VertexId v) const { return deth_origin_[v]; }

  std::span<const std::uint32_t> incident(VertexId v) const {
    return {incident_.data() + offsets_[v], incident_.data() + offsets_[v + 1]};
  }
  VertexId other_end(std::size_t f, VertexId v) const {
    return fragments_[f].u == v ? fragments_[f].v : fragments_[f].u;
  }

  // Vertex whose original index is `original`, if it survived the clip.
  std::optional<VertexId> find_original(std::int64_t original) const;

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  EdgeShape shape() const { return shape_; }
  double max_edge_length() const { return max_edge_length_; }
  const std::optional<Coverage>& coverage() const { return coverage_; }

  // Guard check for events inside the l-infinity box of half-width r around `center`.
  void require_covered(std::span<const double> center, double r) const;

  // Max d_eth between the two ends of a fragment.
  double max_fragment_projection() const;

  // Sub-gadget with only the listed parents (renumbered in list order); isolated vertices
  // other than the origin are dropped.
  SlabGraph restrict_to_parents(const std::vector<ParentId>& parents) const;

  // The fragments reinterpreted as an embedded graph (each fragment becomes an edge).
  EmbeddedGraph as_embedded_graph() const;

  void set_band(double lo, double hi) { lo_ = lo; hi_ = hi; }
  void set_shape(EdgeShape s) { shape_ = s; }
  void set_max_edge_length(double l) { max_edge_length_ = l; }
  void set_coverage(std::optional<Coverage> c) { coverage_ = std::move(c); }

 private:
  int dim_ = 2;
  std::vector<Point> positions_;
  std::vector<std::int64_t> original_;
  std::vector<Fragment> fragments_;
  std::size_t parent_count_ = 0;
  std::optional<VertexId> origin_;
  std::vector<double> deth_origin_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> incident_;
  double lo_ = 0.0;
  double hi_ = 1e300;
  EdgeShape shape_ = EdgeShape::geodesic;
  double max_edge_length_ = 0.0;
  std::optional<Coverage> coverage_ = Coverage::complete();
};

// Phi[G] cut to the slab (heights in [delta, h], or (0, h] without a lower cut).
SlabGraph clip_to_slab(const EmbeddedGraph& g, const geom::Isometry& phi, const geom::Slab& slab);

// Already-positioned graph cut to heights [lo, hi]; lo = 0 and hi = inf are allowed.
SlabGraph clip_to_band(const EmbeddedGraph& g, double lo, double hi);

// No clipping: one fragment per edge.
SlabGraph whole_graph(const EmbeddedGraph& g);

}  // namespace hypgrowth::graph
