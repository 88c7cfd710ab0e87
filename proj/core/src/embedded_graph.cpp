#include "hypgrowth/embedded_graph.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "hypgrowth/errors.hpp"
#include "hypgrowth/geodesic.hpp"

namespace hypgrowth::graph {

Coverage Coverage::complete() { return Coverage{}; }

Coverage Coverage::ball(const Point& center, double radius) {
  Coverage c;
  c.kind = Kind::ball;
  c.center = center;
  c.radius = radius;
  return c;
}

Coverage Coverage::band_box(const Point& center, double half_width, double lo, double hi) {
  Coverage c;
  c.kind = Kind::band_box;
  c.center = center;
  c.radius = half_width;
  c.lo = lo;
  c.hi = hi;
  return c;
}

void Coverage::require(std::span<const double> box_center, double r, double lo, double hi,
                       double max_edge_length) const {
  switch (kind) {
    case Kind::complete:
      return;
    case Kind::ball: {
      const double needed = geom::ball_radius_containing_box(center, box_center, r, lo, hi) + max_edge_length;
      if (needed > radius)
        throw GuardBandError("generated ball of radius " + std::to_string(radius) +
                             " does not cover the required radius " + std::to_string(needed));
      return;
    }
    case Kind::band_box: {
      const double reach = geom::d_eth(center.horizontal(), box_center) + r;
      if (reach > radius * (1 + 1e-12) + 1e-12 || lo < this->lo * (1 - 1e-12) || hi > this->hi * (1 + 1e-12))
        throw GuardBandError("generated region [half-width " + std::to_string(radius) + ", heights " +
                             std::to_string(this->lo) + ".." + std::to_string(this->hi) +
                             "] does not cover the requested box of half-width " + std::to_string(reach));
      return;
    }
  }
}

EmbeddedGraph::EmbeddedGraph(int dimension, std::vector<Point> vertices, std::vector<Edge> edges,
                             VertexId origin_index, GraphMeta meta)
    : dim_(dimension), vertices_(std::move(vertices)), edges_(std::move(edges)), origin_(origin_index),
      meta_(std::move(meta)) {
  if (dim_ < 2 || dim_ > geom::kMaxDimension) throw DomainError("dimension must lie in [2, 4]");
  for (const auto& p : vertices_)
    if (p.dimension() != dim_) throw DomainError("vertex dimension mismatch");
  if (!vertices_.empty() && origin_ >= vertices_.size()) throw DomainError("origin index out of range");
  if (!is_simple()) throw DomainError("graph must be simple");
}

std::vector<std::vector<VertexId>> EmbeddedGraph::adjacency() const {
  std::vector<std::vector<VertexId>> adj(vertices_.size());
  for (const auto& e : edges_) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return adj;
}

bool EmbeddedGraph::is_connected() const {
  if (vertices_.empty()) return true;
  const auto adj = adjacency();
  std::vector<char> seen(vertices_.size(), 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (VertexId w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
  }
  return count == vertices_.size();
}

bool EmbeddedGraph::is_simple() const {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges_.size() * 2);
  for (const auto& e : edges_) {
    if (e.u == e.v || e.u >= vertices_.size() || e.v >= vertices_.size()) return false;
    const std::uint64_t key = (std::uint64_t{std::min(e.u, e.v)} << 32) | std::max(e.u, e.v);
    if (!seen.insert(key).second) return false;
  }
  return true;
}

double EmbeddedGraph::longest_edge() const {
  double best = 0.0;
  for (const auto& e : edges_) {
    const Point& a = vertices_[e.u];
    const Point& b = vertices_[e.v];
    if (meta_.shape == EdgeShape::geodesic) {
      best = std::max(best, geom::hyperbolic_distance(a, b));
    } else {
      // Straight horizontal control edges: length of the segment in the hyperbolic metric.
      const double euclid = std::hypot(geom::l2_horizontal_distance(a, b), a.height() - b.height());
      best = std::max(best, euclid / std::min(a.height(), b.height()));
    }
  }
  return best;
}

EmbeddedGraph transformed(const EmbeddedGraph& g, const geom::Isometry& phi) {
  if (g.meta().shape == EdgeShape::straight && !phi.similarity())
    throw DomainError("straight-edge control graphs only admit similarities");
  std::vector<Point> vs;
  vs.reserve(g.vertex_count());
  for (const auto& p : g.vertices()) vs.push_back(phi.apply(p));
  GraphMeta meta = g.meta();
  if (meta.coverage) {
    Coverage& c = *meta.coverage;
    switch (c.kind) {
      case Coverage::Kind::complete:
        break;
      case Coverage::Kind::ball:
        c.center = phi.apply(c.center);
        break;
      case Coverage::Kind::band_box: {
        const auto& s = phi.similarity();
        const bool axis_aligned = s && (s->q - geom::Orthogonal::Identity(s->q.rows(), s->q.cols()))
                                                   .cwiseAbs()
                                                   .maxCoeff() == 0.0;
        if (axis_aligned) {
          c.center = phi.apply(Point(c.center.horizontal(), 1.0));
          c.center = Point(c.center.horizontal(), 1.0);
          c.radius *= s->k;
          c.lo *= s->k;
          c.hi *= s->k;
        } else {
          meta.coverage.reset();
        }
        break;
      }
    }
  }
  return EmbeddedGraph(g.dimension(), std::move(vs), g.edges(), g.origin_index(), std::move(meta));
}

EmbeddedGraph induced_subgraph(const EmbeddedGraph& g, const std::vector<bool>& keep) {
  if (keep.size() != g.vertex_count()) throw DomainError("mask size mismatch");
  if (!keep[g.origin_index()]) throw DomainError("induced subgraph must keep the origin");
  std::vector<VertexId> index(g.vertex_count(), 0);
  std::vector<Point> vs;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (keep[v]) {
      index[v] = static_cast<VertexId>(vs.size());
      vs.push_back(g.vertex(v));
    }
  std::vector<Edge> es;
  for (const auto& e : g.edges())
    if (keep[e.u] && keep[e.v]) es.push_back({index[e.u], index[e.v]});
  GraphMeta meta = g.meta();
  meta.coverage.reset();
  return EmbeddedGraph(g.dimension(), std::move(vs), std::move(es), index[g.origin_index()], std::move(meta));
}

HeightConstants height_constants(const EmbeddedGraph& g) {
  if (g.edge_count() == 0) throw DomainError("graph has no edges");
  HeightConstants c;
  const double lmax = g.meta().max_edge_length > 0 ? g.meta().max_edge_length : g.longest_edge();
  for (const auto& e : g.edges()) {
    const Point& a = g.vertex(e.u);
    const Point& b = g.vertex(e.v);
    const auto curve = g.meta().shape == EdgeShape::geodesic ? geom::EdgeCurve::geodesic(a, b)
                                                             : geom::EdgeCurve::straight(a, b);
    if (curve.min_height() <= 1.0) c.a_empirical = std::max(c.a_empirical, geom::d_eth(a, b));
    c.h_empirical = std::max(c.h_empirical, curve.max_height() / curve.min_height());
  }
  if (g.meta().shape == EdgeShape::geodesic) {
    // Lowest endpoint at height t <= 1 bounds the horizontal span by t sinh(L).
    c.a_bound = std::sinh(lmax);
    c.h_bound = std::exp(lmax);
  } else {
    c.a_bound = c.a_empirical;
    c.h_bound = c.h_empirical;
  }
  return c;
}

double compute_a(const EmbeddedGraph& g) { return height_constants(g).a_empirical; }

double compute_H(const EmbeddedGraph& g) { return height_constants(g).h_bound; }

}  // namespace hypgrowth::graph
