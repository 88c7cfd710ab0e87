#include "hypgrowth/slab_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "hypgrowth/errors.hpp"
#include "hypgrowth/geodesic.hpp"

namespace hypgrowth::graph {

namespace {

constexpr double kEndpointParamTol = 1e-10;

bool in_band(double y, double lo, double hi) {
  const double tol = 1e-12 * std::max(1.0, y);
  return y >= lo - tol && y <= hi + tol;
}

}  // namespace

SlabGraph::SlabGraph(int dimension, std::vector<Point> positions, std::vector<std::int64_t> original,
                     std::vector<Fragment> fragments, std::size_t parent_count,
                     std::optional<VertexId> origin)
    : dim_(dimension), positions_(std::move(positions)), original_(std::move(original)),
      fragments_(std::move(fragments)), parent_count_(parent_count), origin_(origin) {
  if (original_.size() != positions_.size()) throw DomainError("slab vertex bookkeeping mismatch");
  if (origin_ && *origin_ >= positions_.size()) throw DomainError("slab origin out of range");
  for (const auto& f : fragments_)
    if (f.u >= positions_.size() || f.v >= positions_.size() || f.parent >= parent_count_)
      throw DomainError("fragment refers to a missing vertex or parent");
  deth_origin_.resize(positions_.size());
  for (std::size_t v = 0; v < positions_.size(); ++v) deth_origin_[v] = geom::d_eth_to_axis(positions_[v]);
  offsets_.assign(positions_.size() + 1, 0);
  for (const auto& f : fragments_) {
    ++offsets_[f.u + 1];
    ++offsets_[f.v + 1];
  }
  for (std::size_t v = 0; v < positions_.size(); ++v) offsets_[v + 1] += offsets_[v];
  incident_.resize(offsets_.back());
  std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::uint32_t i = 0; i < fragments_.size(); ++i) {
    incident_[fill[fragments_[i].u]++] = i;
    incident_[fill[fragments_[i].v]++] = i;
  }
}

std::optional<VertexId> SlabGraph::find_original(std::int64_t original) const {
  for (VertexId v = 0; v < original_.size(); ++v)
    if (original_[v] == original) return v;
  return std::nullopt;
}

void SlabGraph::require_covered(std::span<const double> center, double r) const {
  if (!coverage_) throw GuardBandError("graph carries no coverage information");
  coverage_->require(center, r, lo_ > 0.0 ? lo_ : 0.0, hi_, max_edge_length_);
}

double SlabGraph::max_fragment_projection() const {
  double best = 0.0;
  for (const auto& f : fragments_) best = std::max(best, geom::d_eth(positions_[f.u], positions_[f.v]));
  return best;
}

SlabGraph SlabGraph::restrict_to_parents(const std::vector<ParentId>& parents) const {
  std::unordered_map<ParentId, ParentId> renumber;
  for (ParentId p : parents) renumber.emplace(p, static_cast<ParentId>(renumber.size()));
  std::vector<char> used(positions_.size(), 0);
  if (origin_) used[*origin_] = 1;
  for (const auto& f : fragments_)
    if (renumber.count(f.parent)) used[f.u] = used[f.v] = 1;
  std::vector<VertexId> index(positions_.size(), 0);
  std::vector<Point> pos;
  std::vector<std::int64_t> orig;
  for (VertexId v = 0; v < positions_.size(); ++v)
    if (used[v]) {
      index[v] = static_cast<VertexId>(pos.size());
      pos.push_back(positions_[v]);
      orig.push_back(original_[v]);
    }
  std::vector<Fragment> frags;
  for (const auto& f : fragments_) {
    auto it = renumber.find(f.parent);
    if (it != renumber.end()) frags.push_back({index[f.u], index[f.v], it->second});
  }
  std::optional<VertexId> origin;
  if (origin_) origin = index[*origin_];
  SlabGraph out(dim_, std::move(pos), std::move(orig), std::move(frags), parents.size(), origin);
  out.lo_ = lo_;
  out.hi_ = hi_;
  out.shape_ = shape_;
  out.max_edge_length_ = max_edge_length_;
  out.coverage_ = Coverage::complete();
  return out;
}

EmbeddedGraph SlabGraph::as_embedded_graph() const {
  std::vector<Edge> es;
  for (const auto& f : fragments_) es.push_back({f.u, f.v});
  GraphMeta meta;
  meta.family = "slab-clip";
  meta.shape = shape_;
  meta.max_edge_length = max_edge_length_;
  meta.coverage = coverage_;
  return EmbeddedGraph(dim_, positions_, std::move(es), origin_.value_or(0), std::move(meta));
}

SlabGraph clip_to_band(const EmbeddedGraph& g, double lo, double hi) {
  if (!(hi > lo) || lo < 0.0) throw DomainError("invalid height band");
  std::vector<Point> pos;
  std::vector<std::int64_t> orig;
  std::vector<VertexId> index(g.vertex_count(), std::numeric_limits<VertexId>::max());
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (in_band(g.vertex(v).height(), lo, hi)) {
      index[v] = static_cast<VertexId>(pos.size());
      pos.push_back(g.vertex(v));
      orig.push_back(v);
    }
  std::vector<Fragment> frags;
  auto snap = [&](double y) {
    // Crossings lie on one of the two cut planes.
    if (lo > 0.0 && std::abs(y - lo) <= std::abs(y - hi)) return lo;
    return hi;
  };
  for (ParentId e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edges()[e];
    const Point& a = g.vertex(edge.u);
    const Point& b = g.vertex(edge.v);
    const auto curve = g.meta().shape == EdgeShape::geodesic ? geom::EdgeCurve::geodesic(a, b)
                                                             : geom::EdgeCurve::straight(a, b);
    for (const auto& iv : curve.band_intervals(lo, hi)) {
      auto endpoint = [&](double s) -> VertexId {
        if (s <= kEndpointParamTol && index[edge.u] != std::numeric_limits<VertexId>::max()) return index[edge.u];
        if (s >= 1.0 - kEndpointParamTol && index[edge.v] != std::numeric_limits<VertexId>::max())
          return index[edge.v];
        pos.push_back(curve.at_height(s, snap(curve.height_at(s))));
        orig.push_back(kCrossingVertex);
        return static_cast<VertexId>(pos.size() - 1);
      };
      const VertexId u = endpoint(iv[0]);
      const VertexId w = endpoint(iv[1]);
      if (u != w) frags.push_back({u, w, e});
    }
  }
  std::optional<VertexId> origin;
  if (index[g.origin_index()] != std::numeric_limits<VertexId>::max()) origin = index[g.origin_index()];
  SlabGraph out(g.dimension(), std::move(pos), std::move(orig), std::move(frags), g.edge_count(), origin);
  out.set_band(lo, hi);
  out.set_shape(g.meta().shape);
  out.set_max_edge_length(g.meta().max_edge_length > 0 ? g.meta().max_edge_length : g.longest_edge());
  out.set_coverage(g.meta().coverage);
  return out;
}

SlabGraph clip_to_slab(const EmbeddedGraph& g, const geom::Isometry& phi, const geom::Slab& slab) {
  return clip_to_band(transformed(g, phi), slab.lower(), slab.h);
}

SlabGraph whole_graph(const EmbeddedGraph& g) {
  std::vector<std::int64_t> orig(g.vertex_count());
  for (std::size_t v = 0; v < orig.size(); ++v) orig[v] = static_cast<std::int64_t>(v);
  std::vector<Fragment> frags;
  for (ParentId e = 0; e < g.edge_count(); ++e) frags.push_back({g.edges()[e].u, g.edges()[e].v, e});
  std::optional<VertexId> origin;
  if (g.vertex_count() > 0) origin = g.origin_index();
  SlabGraph out(g.dimension(), g.vertices(), std::move(orig), std::move(frags), g.edge_count(), origin);
  out.set_shape(g.meta().shape);
  out.set_max_edge_length(g.meta().max_edge_length > 0 ? g.meta().max_edge_length : g.longest_edge());
  out.set_coverage(g.meta().coverage);
  return out;
}

}  // namespace hypgrowth::graph
