#pragma once

#include <memory>
#include <string>

#include "hypgrowth/embedded_graph.hpp"
#include "hypgrowth/isometry.hpp"
#include "hypgrowth/tiling.hpp"

namespace hypgrowth::graph {

// A transitive graph that can be generated at any placement, complete on a requested region.
class GraphFamily {
 public:
  virtual ~GraphFamily() = default;
  virtual std::string name() const = 0;
  virtual int dimension() const = 0;
  virtual double max_edge_length() const = 0;
  virtual EmbeddedGraph generate(const geom::Isometry& placement, const Region& region) const = 0;
  // Largest d_eth spanned by one edge meeting L, over all placements.
  virtual double projection_bound() const = 0;
};

class TilingFamily final : public GraphFamily {
 public:
  TilingFamily(int p, int q, std::size_t vertex_cap = kDefaultVertexCap);
  std::string name() const override;
  int dimension() const override { return 2; }
  double max_edge_length() const override { return edge_length_; }
  EmbeddedGraph generate(const geom::Isometry& placement, const Region& region) const override;
  double projection_bound() const override;
  int p() const { return p_; }
  int q() const { return q_; }

 private:
  int p_, q_;
  std::size_t cap_;
  double edge_length_;
};

// Square grid at height 1 (after placement) with straight edges; accepts similarities only.
class SlabLatticeFamily final : public GraphFamily {
 public:
  SlabLatticeFamily(int d, double spacing);
  std::string name() const override;
  int dimension() const override { return d_; }
  double max_edge_length() const override { return spacing_; }
  EmbeddedGraph generate(const geom::Isometry& placement, const Region& region) const override;
  double projection_bound() const override { return spacing_; }

 private:
  int d_;
  double spacing_;
};

std::unique_ptr<GraphFamily> make_family(const std::string& spec);

}  // namespace hypgrowth::graph
