#include "hypgrowth/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hypgrowth/errors.hpp"
#include "hypgrowth/gp_estimate.hpp"
#include "hypgrowth/parallel.hpp"
#include "hypgrowth/percolation.hpp"
#include "hypgrowth/rng.hpp"
#include "hypgrowth/tiling.hpp"
#include "hypgrowth/union_find.hpp"

namespace hypgrowth::decay {

namespace {

int resolve(int threads) { return threads > 0 ? threads : default_thread_count(); }

void check_p_grid(const std::vector<double>& p_grid) {
  if (p_grid.size() < 2) throw DomainError("p grid needs at least two points");
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    if (!(p_grid[i] >= 0.0 && p_grid[i] <= 1.0)) throw DomainError("p must lie in [0, 1]");
    if (i > 0 && !(p_grid[i] > p_grid[i - 1])) throw DomainError("p grid must increase");
  }
}

}  // namespace

CrossingCurve crossing_curve(const graph::SlabGraph& g, const std::vector<double>& p_grid, std::size_t trials,
                             std::uint64_t seed, int threads) {
  check_p_grid(p_grid);
  if (trials == 0) throw DomainError("need at least one trial");
  const std::size_t n = g.vertex_count();
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (graph::VertexId v = 0; v < n; ++v) {
    lo = std::min(lo, g.position(v).horizontal(0));
    hi = std::max(hi, g.position(v).horizontal(0));
  }
  const std::uint32_t left = static_cast<std::uint32_t>(n), right = left + 1;
  CrossingCurve out;
  out.extent = hi;
  out.trials = trials;
  out.p_grid = p_grid;
  out.first_crossing.assign(trials, 1.0);
  parallel_for(trials, resolve(threads), [&](std::size_t t) {
    const std::uint64_t s = derive_seed(seed, {tag_of("crossing"), t});
    std::vector<std::pair<double, std::uint32_t>> order;
    order.reserve(g.fragment_count());
    for (std::size_t f = 0; f < g.fragment_count(); ++f)
      order.emplace_back(edge_uniform(s, g.fragment(f).parent), static_cast<std::uint32_t>(f));
    std::sort(order.begin(), order.end());
    UnionFind uf(n + 2);
    for (graph::VertexId v = 0; v < n; ++v) {
      if (g.position(v).horizontal(0) <= lo + 1e-9) uf.unite(v, left);
      if (g.position(v).horizontal(0) >= hi - 1e-9) uf.unite(v, right);
    }
    for (const auto& [u, f] : order) {
      uf.unite(g.fragment(f).u, g.fragment(f).v);
      if (uf.find(left) == uf.find(right)) {
        out.first_crossing[t] = u;
        break;
      }
    }
  });
  for (double p : p_grid) {
    // open iff u < p, so the crossing exists at p iff the completing uniform is below p
    const auto k = std::count_if(out.first_crossing.begin(), out.first_crossing.end(), [&](double u) { return u < p; });
    out.crossing.push_back(static_cast<double>(k) / static_cast<double>(trials));
  }
  std::vector<double> sorted = out.first_crossing;
  std::sort(sorted.begin(), sorted.end());
  out.median = trials % 2 ? sorted[trials / 2] : 0.5 * (sorted[trials / 2 - 1] + sorted[trials / 2]);
  return out;
}

PcEstimate estimate_pc(int dimension, const std::vector<double>& extents, const std::vector<double>& p_grid,
                       std::size_t trials, std::uint64_t seed, int threads) {
  if (extents.size() < 2) throw DomainError("the crossing analysis needs two system sizes");
  check_p_grid(p_grid);
  PcEstimate est;
  est.lower = std::numeric_limits<double>::infinity();
  est.upper = -est.lower;
  for (std::size_t i = 0; i < extents.size(); ++i) {
    const auto lattice = graph::whole_graph(graph::gen_slab_lattice(dimension, 1.0, extents[i]));
    auto curve = crossing_curve(lattice, p_grid, trials, derive_seed(seed, {tag_of("pc"), i}), threads);
    if (curve.median < p_grid.front() || curve.median > p_grid.back())
      throw DomainError("the crossing probability does not pass 1/2 inside the p grid");
    const auto it = std::upper_bound(p_grid.begin(), p_grid.end(), curve.median);
    const std::size_t j = std::min<std::size_t>(static_cast<std::size_t>(it - p_grid.begin()), p_grid.size() - 1);
    est.lower = std::min(est.lower, p_grid[j - 1]);
    est.upper = std::max(est.upper, p_grid[j]);
    est.point += curve.median / static_cast<double>(extents.size());
    est.curves.push_back(std::move(curve));
  }
  return est;
}

std::vector<double> two_point_curve(const graph::SlabGraph& g, double p, const std::vector<graph::VertexId>& vertices,
                                    std::size_t trials, std::uint64_t seed, int threads) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
  if (!g.origin()) throw DomainError("graph has no origin");
  for (auto v : vertices)
    if (v >= g.vertex_count()) throw DomainError("vertex not in graph");
  constexpr std::size_t kBlock = 256;
  const std::size_t blocks = (trials + kBlock - 1) / kBlock;
  std::vector<std::vector<std::uint64_t>> hits(blocks, std::vector<std::uint64_t>(vertices.size(), 0));
  parallel_for(blocks, resolve(threads), [&](std::size_t b) {
    perc::ClusterExplorer explorer(g);
    std::vector<char> in(g.vertex_count(), 0);
    const graph::VertexId seeds[] = {*g.origin()};
    for (std::size_t t = b * kBlock; t < std::min(trials, (b + 1) * kBlock); ++t) {
      const std::uint64_t s = derive_seed(seed, {tag_of("two-point"), t});
      explorer.explore(seeds, [&](graph::ParentId e) { return edge_uniform(s, e) < p; });
      for (auto v : explorer.visited()) in[v] = 1;
      for (std::size_t i = 0; i < vertices.size(); ++i) hits[b][i] += in[vertices[i]];
      for (auto v : explorer.visited()) in[v] = 0;
    }
  });
  std::vector<double> out(vertices.size(), 0.0);
  for (const auto& h : hits)
    for (std::size_t i = 0; i < vertices.size(); ++i) out[i] += static_cast<double>(h[i]);
  for (auto& x : out) x /= static_cast<double>(std::max<std::size_t>(trials, 1));
  return out;
}

BoundaryPointReport estimate_boundary_point_prob(const graph::GraphFamily& family, double p,
                                                 const std::vector<double>& x, int n_max, std::size_t trials,
                                                 std::uint64_t seed, int threads) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
  if (n_max < 0) throw DomainError("tower depth must be non-negative");
  const int d = family.dimension();
  if (static_cast<int>(x.size()) != d - 1) throw DomainError("boundary point has wrong dimension");
  double norm2 = 0.0;
  for (double xi : x) norm2 += xi * xi;
  const double rho1 = 0.5 * std::sqrt(norm2 + 1.0);
  BoundaryPointReport rep;
  for (int n = 1; n <= n_max; ++n) rep.radii.push_back(rho1 * std::ldexp(1.0, 1 - n));
  const geom::Point o = geom::Point::origin(d);
  const double top = n_max > 0 ? rep.radii.back() : rho1;
  const double radius = geom::hyperbolic_distance(o, geom::Point(x, top)) + 2.0 * family.max_edge_length();
  const auto g = family.generate(geom::Isometry::identity(d), graph::Region::ball(radius));
  const auto whole = graph::whole_graph(g);
  rep.graph_vertices = whole.vertex_count();
  // Deepest half-ball containing each vertex.
  std::vector<int> depth(whole.vertex_count(), 0);
  for (graph::VertexId v = 0; v < whole.vertex_count(); ++v) {
    const auto& pt = whole.position(v);
    double dist2 = pt.height() * pt.height();
    for (int i = 0; i < d - 1; ++i) dist2 += (pt.horizontal(i) - x[static_cast<std::size_t>(i)]) *
                                             (pt.horizontal(i) - x[static_cast<std::size_t>(i)]);
    for (int n = 1; n <= n_max && dist2 < rep.radii[static_cast<std::size_t>(n - 1)] *
                                              rep.radii[static_cast<std::size_t>(n - 1)]; ++n)
      depth[v] = n;
  }
  const graph::VertexId start = g.origin_index();
  std::vector<std::uint64_t> reached(static_cast<std::size_t>(n_max) + 1, 0);
  std::vector<std::uint64_t> violations(trials, 0);
  std::vector<int> deepest(trials, 0);
  constexpr std::size_t kBlock = 64;
  const std::size_t blocks = (trials + kBlock - 1) / kBlock;
  parallel_for(blocks, resolve(threads), [&](std::size_t b) {
    perc::ClusterExplorer explorer(whole);
    const graph::VertexId seeds[] = {start};
    for (std::size_t t = b * kBlock; t < std::min(trials, (b + 1) * kBlock); ++t) {
      const std::uint64_t s = derive_seed(seed, {tag_of("boundary-point"), t});
      explorer.explore(seeds, [&](graph::ParentId e) { return edge_uniform(s, e) < p; });
      std::vector<char> meets(static_cast<std::size_t>(n_max) + 1, 0);
      meets[0] = 1;
      for (auto v : explorer.visited()) meets[static_cast<std::size_t>(depth[v])] = 1;
      // meets[n] marks the deepest level of some vertex; propagate up the nested tower.
      int best = 0;
      for (int n = 0; n <= n_max; ++n)
        if (meets[static_cast<std::size_t>(n)]) best = n;
      deepest[t] = best;
      for (int n = 1; n <= n_max; ++n) {
        bool in_n = false, in_next = false;
        for (auto v : explorer.visited()) {
          in_n = in_n || depth[v] >= n;
          in_next = in_next || (n < n_max && depth[v] >= n + 1);
        }
        violations[t] += in_next && !in_n;
      }
    }
  });
  for (std::size_t t = 0; t < trials; ++t) {
    rep.coupling_violations += violations[t];
    for (int n = 0; n <= deepest[t]; ++n) ++reached[static_cast<std::size_t>(n)];
  }
  for (int n = 0; n <= n_max; ++n) {
    const auto k = reached[static_cast<std::size_t>(n)];
    rep.frequency.push_back(trials ? static_cast<double>(k) / static_cast<double>(trials) : 0.0);
    rep.ci.push_back(binomial_ci(k, trials));
  }
  return rep;
}

}  // namespace hypgrowth::decay
