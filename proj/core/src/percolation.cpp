#include "hypgrowth/percolation.hpp"

#include <algorithm>
#include <cmath>

#include "hypgrowth/errors.hpp"
#include "hypgrowth/geodesic.hpp"
#include "hypgrowth/union_find.hpp"

namespace hypgrowth::perc {

namespace {

constexpr double kHitTolerance = 1e-9;

void check_p(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
}

std::span<const double> horizontal_span(const std::vector<double>& c) { return {c.data(), c.size()}; }

// min and max of d_eth(center, .) over the cluster, fragment interiors included.
std::pair<double, double> deth_range(const SlabGraph& g, const Configuration& config,
                                     const std::vector<VertexId>& members, std::span<const double> center,
                                     const std::vector<char>& in_cluster) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (VertexId v : members) {
    const double d = geom::d_eth(g.position(v).horizontal(), center);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  for (VertexId v : members)
    for (std::uint32_t f : g.incident(v)) {
      const auto& frag = g.fragment(f);
      if (frag.u != v || !config.is_open(frag.parent) || !in_cluster[frag.v]) continue;
      lo = std::min(lo, geom::segment_min_linf(g.position(frag.u).horizontal(), g.position(frag.v).horizontal(),
                                               center));
    }
  return {lo, hi};
}

std::vector<char> membership(const SlabGraph& g, const std::vector<VertexId>& members) {
  std::vector<char> in(g.vertex_count(), 0);
  for (VertexId v : members) in[v] = 1;
  return in;
}

void check_dimension(const SlabGraph& g, const std::vector<double>& center) {
  if (static_cast<int>(center.size()) != g.dimension() - 1) throw DomainError("target centre has wrong dimension");
}

}  // namespace

Configuration Configuration::sample(std::size_t parent_count, double p, std::uint64_t seed) {
  check_p(p);
  Configuration c;
  c.p_ = p;
  c.seed_ = seed;
  c.states_.resize(parent_count);
  for (std::size_t e = 0; e < parent_count; ++e) c.states_[e] = edge_uniform(seed, e) < p ? 1 : 0;
  return c;
}

Configuration Configuration::sample(const SlabGraph& g, double p, std::uint64_t seed) {
  return sample(g.parent_count(), p, seed);
}

Configuration Configuration::from_states(std::vector<std::uint8_t> states, double p) {
  Configuration c;
  c.p_ = p;
  c.states_ = std::move(states);
  return c;
}

Configuration Configuration::from_mask(std::size_t parent_count, std::uint64_t mask) {
  if (parent_count > 64) throw DomainError("mask configurations hold at most 64 edges");
  std::vector<std::uint8_t> s(parent_count);
  for (std::size_t e = 0; e < parent_count; ++e) s[e] = (mask >> e) & 1U;
  return from_states(std::move(s));
}

std::size_t Configuration::open_count() const {
  return static_cast<std::size_t>(std::count(states_.begin(), states_.end(), std::uint8_t{1}));
}

Partition clusters(const SlabGraph& g, const Configuration& config) {
  if (config.size() != g.parent_count()) throw DomainError("configuration does not match the graph");
  UnionFind uf(g.vertex_count());
  for (const auto& f : g.fragments())
    if (config.is_open(f.parent)) uf.unite(f.u, f.v);
  Partition part;
  part.label.assign(g.vertex_count(), 0);
  std::vector<std::int64_t> index_of_root(g.vertex_count(), -1);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const std::uint32_t root = uf.find(v);
    if (index_of_root[root] < 0) {
      index_of_root[root] = static_cast<std::int64_t>(part.members.size());
      part.members.emplace_back();
    }
    part.label[v] = static_cast<std::uint32_t>(index_of_root[root]);
    part.members[part.label[v]].push_back(v);
  }
  return part;
}

bool cluster_hits(const SlabGraph& g, const Configuration& config, const std::vector<VertexId>& members,
                  const Target& target) {
  if (members.empty()) return false;
  if (const auto* vt = std::get_if<VertexTarget>(&target)) {
    const auto in = membership(g, members);
    return std::any_of(vt->vertices.begin(), vt->vertices.end(), [&](VertexId v) { return v < in.size() && in[v]; });
  }
  const auto in = membership(g, members);
  if (const auto* st = std::get_if<SphereTarget>(&target)) {
    check_dimension(g, st->center);
    const auto [lo, hi] = deth_range(g, config, members, horizontal_span(st->center), in);
    return lo <= st->r + kHitTolerance && hi >= st->r - kHitTolerance;
  }
  const auto& bt = std::get<BoxTarget>(target);
  check_dimension(g, bt.center);
  if (bt.h && *bt.h < g.hi()) {
    // Height-capped boxes are tested on vertices.
    return std::any_of(members.begin(), members.end(), [&](VertexId v) {
      return g.position(v).height() <= *bt.h + kHitTolerance &&
             geom::d_eth(g.position(v).horizontal(), horizontal_span(bt.center)) <= bt.r + kHitTolerance;
    });
  }
  const auto [lo, hi] = deth_range(g, config, members, horizontal_span(bt.center), in);
  (void)hi;
  return lo <= bt.r + kHitTolerance;
}

ClusterReport describe_cluster(const SlabGraph& g, const Configuration& config,
                               const std::vector<VertexId>& members, const std::vector<Target>& probes) {
  ClusterReport rep;
  rep.vertices = members;
  rep.vertex_count = members.size();
  const int axes = g.dimension() - 1;
  std::vector<double> lo(static_cast<std::size_t>(axes), std::numeric_limits<double>::infinity());
  std::vector<double> hi(static_cast<std::size_t>(axes), -std::numeric_limits<double>::infinity());
  for (VertexId v : members) {
    const auto& p = g.position(v);
    rep.size_r = std::max(rep.size_r, g.deth_origin(v));
    rep.max_height = std::max(rep.max_height, p.height());
    for (int i = 0; i < axes; ++i) {
      lo[static_cast<std::size_t>(i)] = std::min(lo[static_cast<std::size_t>(i)], p.horizontal(i));
      hi[static_cast<std::size_t>(i)] = std::max(hi[static_cast<std::size_t>(i)], p.horizontal(i));
    }
  }
  // Arcs can rise above their endpoints.
  const auto in = membership(g, members);
  for (VertexId v : members)
    for (std::uint32_t f : g.incident(v)) {
      const auto& frag = g.fragment(f);
      if (frag.u != v || !config.is_open(frag.parent) || !in[frag.v]) continue;
      const auto curve = g.shape() == graph::EdgeShape::geodesic
                             ? geom::EdgeCurve::geodesic(g.position(frag.u), g.position(frag.v))
                             : geom::EdgeCurve::straight(g.position(frag.u), g.position(frag.v));
      rep.max_height = std::max(rep.max_height, curve.max_height());
    }
  if (!members.empty()) {
    for (int i = 0; i < axes; ++i)
      rep.proj_diameter_linf =
          std::max(rep.proj_diameter_linf, hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)]);
    // Fragment projections are segments between vertex projections, so vertices suffice.
    if (axes == 1) {
      rep.proj_diameter = rep.proj_diameter_linf;
    } else {
      double best = 0.0;
      for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
          best = std::max(best, geom::l2_horizontal_distance(g.position(members[i]), g.position(members[j])));
      rep.proj_diameter = best;
    }
  }
  for (const auto& probe : probes)
    if (cluster_hits(g, config, members, probe))
      rep.touches.push_back(std::visit([](const auto& t) { return t.tag; }, probe));
  return rep;
}

ClusterReport cluster_of(const SlabGraph& g, const Configuration& config, VertexId v,
                         const std::vector<Target>& probes) {
  if (v >= g.vertex_count()) throw DomainError("vertex not in graph");
  if (config.size() != g.parent_count()) throw DomainError("configuration does not match the graph");
  ClusterExplorer explorer(g);
  const VertexId seed[] = {v};
  explorer.explore(seed, [&](ParentId e) { return config.is_open(e); });
  std::vector<VertexId> members = explorer.visited();
  std::sort(members.begin(), members.end());
  return describe_cluster(g, config, members, probes);
}

bool connects(const SlabGraph& g, const Configuration& config, const std::vector<VertexId>& sources,
              const Target& target) {
  if (config.size() != g.parent_count()) throw DomainError("configuration does not match the graph");
  if (const auto* st = std::get_if<SphereTarget>(&target)) g.require_covered(horizontal_span(st->center), st->r);
  if (const auto* bt = std::get_if<BoxTarget>(&target)) g.require_covered(horizontal_span(bt->center), bt->r);
  const Partition part = clusters(g, config);
  std::vector<char> done(part.members.size(), 0);
  for (VertexId s : sources) {
    if (s >= g.vertex_count()) throw DomainError("source vertex not in graph");
    const auto c = part.label[s];
    if (done[c]) continue;
    done[c] = 1;
    if (cluster_hits(g, config, part.members[c], target)) return true;
  }
  return false;
}

std::vector<VertexId> thick_origin(const SlabGraph& g, double r0) {
  if (!(r0 > 0.0)) throw DomainError("r0 must be positive");
  std::vector<VertexId> out;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (g.is_original(v) && g.deth_origin(v) <= r0 + 1e-12 && g.position(v).height() <= 1.0 + 1e-12)
      out.push_back(v);
  return out;
}

}  // namespace hypgrowth::perc
