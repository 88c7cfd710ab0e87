#include "hypgrowth/family.hpp"

#include <cmath>
#include <regex>

#include "hypgrowth/errors.hpp"

namespace hypgrowth::graph {

TilingFamily::TilingFamily(int p, int q, std::size_t vertex_cap)
    : p_(p), q_(q), cap_(vertex_cap), edge_length_(tiling_edge_length(p, q)) {}

std::string TilingFamily::name() const { return "{" + std::to_string(p_) + "," + std::to_string(q_) + "}"; }

EmbeddedGraph TilingFamily::generate(const geom::Isometry& placement, const Region& region) const {
  return generate_tiling(p_, q_, placement, region, cap_).graph;
}

double TilingFamily::projection_bound() const { return std::sinh(edge_length_); }

SlabLatticeFamily::SlabLatticeFamily(int d, double spacing) : d_(d), spacing_(spacing) {
  if (d < 2 || d > geom::kMaxDimension) throw DomainError("lattice dimension must lie in [2, 4]");
  if (!(spacing > 0.0)) throw DomainError("lattice spacing must be positive");
}

std::string SlabLatticeFamily::name() const { return "slab-lattice-d" + std::to_string(d_); }

EmbeddedGraph SlabLatticeFamily::generate(const geom::Isometry& placement, const Region& region) const {
  const auto& sim = placement.similarity();
  if (!sim || (sim->q - geom::Orthogonal::Identity(d_ - 1, d_ - 1)).cwiseAbs().maxCoeff() != 0.0)
    throw DomainError("the lattice control model only admits scalings and translations");
  const double k = sim->k;
  const double step = k * spacing_;
  double reach;
  if (region.kind == Region::Kind::ball) {
    // Horizontal reach of the hyperbolic ball at the lattice height.
    reach = k * std::sqrt(2.0 * (std::cosh(region.radius) - 1.0));
  } else {
    reach = region.radius + step;
  }
  double shift = 0.0;
  for (int i = 0; i + 1 < d_; ++i) shift = std::max(shift, std::abs(sim->x[static_cast<std::size_t>(i)]));
  const double extent = std::floor((reach + shift) / step + 1.0) * spacing_;
  EmbeddedGraph base = gen_slab_lattice(d_, spacing_, std::max(extent, spacing_));
  EmbeddedGraph placed = transformed(base, placement);
  std::vector<bool> keep(placed.vertex_count());
  const geom::Point center = placed.vertex(placed.origin_index());
  for (VertexId v = 0; v < placed.vertex_count(); ++v) {
    const auto& pt = placed.vertex(v);
    keep[v] = region.kind == Region::Kind::ball ? geom::hyperbolic_distance(center, pt) <= region.radius
                                                : geom::d_eth_to_axis(pt) <= reach;
  }
  keep[placed.origin_index()] = true;
  EmbeddedGraph out = induced_subgraph(placed, keep);
  if (region.kind == Region::Kind::ball)
    out.meta().coverage = Coverage::ball(center, region.radius);
  else
    out.meta().coverage = Coverage::band_box(geom::Point::origin(d_), region.radius, 1e-300, 1e300);
  return out;
}

std::unique_ptr<GraphFamily> make_family(const std::string& spec) {
  static const std::regex tiling(R"(\{\s*(\d+)\s*,\s*(\d+)\s*\})");
  static const std::regex lattice(R"(slab-lattice-d(\d+))");
  std::smatch m;
  if (std::regex_match(spec, m, tiling)) return std::make_unique<TilingFamily>(std::stoi(m[1]), std::stoi(m[2]));
  if (std::regex_match(spec, m, lattice)) return std::make_unique<SlabLatticeFamily>(std::stoi(m[1]), 1.0);
  throw DomainError("unknown graph family '" + spec + "'");
}

}  // namespace hypgrowth::graph
