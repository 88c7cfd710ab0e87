#include "hypgrowth/sausage.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <queue>

#include "hypgrowth/errors.hpp"
#include "hypgrowth/max_flow.hpp"

namespace hypgrowth::oracle {

namespace {

constexpr double kHitTolerance = 1e-9;

struct Step {
  std::size_t fragment;
  VertexId from, to;
};

// Breadth-first open path from the seed to the far side, skipping parent `skip`.
std::optional<std::vector<Step>> witness_path(const SlabGraph& g, const perc::Configuration& config, VertexId seed,
                                              const std::vector<char>& far, std::int64_t skip = -1) {
  std::vector<std::int64_t> via(g.vertex_count(), -1);
  std::vector<char> seen(g.vertex_count(), 0);
  std::queue<VertexId> q;
  seen[seed] = 1;
  q.push(seed);
  std::optional<VertexId> hit;
  while (!q.empty() && !hit) {
    const VertexId v = q.front();
    q.pop();
    if (far[v]) {
      hit = v;
      break;
    }
    for (std::uint32_t f : g.incident(v)) {
      const auto parent = g.fragment(f).parent;
      if (!config.is_open(parent) || static_cast<std::int64_t>(parent) == skip) continue;
      const VertexId w = g.other_end(f, v);
      if (seen[w]) continue;
      seen[w] = 1;
      via[w] = f;
      q.push(w);
    }
  }
  if (!hit) return std::nullopt;
  std::vector<Step> path;
  for (VertexId v = *hit; v != seed;) {
    const auto f = static_cast<std::size_t>(via[v]);
    const VertexId u = g.other_end(f, v);
    path.push_back({f, u, v});
    v = u;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

void check_seed(const SlabGraph& g, VertexId seed, const perc::SphereTarget& target) {
  if (seed >= g.vertex_count()) throw DomainError("seed vertex not in graph");
  if (geom::d_eth(g.position(seed).horizontal(), target.center) > target.r + kHitTolerance)
    throw DomainError("seed must lie inside the target sphere");
}

}  // namespace

std::vector<char> far_side(const SlabGraph& g, const perc::SphereTarget& target) {
  std::vector<char> far(g.vertex_count(), 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    far[v] = geom::d_eth(g.position(v).horizontal(), target.center) >= target.r - kHitTolerance;
  return far;
}

std::vector<ParentId> pivotal_parents(const SlabGraph& g, const perc::Configuration& config, VertexId seed,
                                      const perc::SphereTarget& target) {
  check_seed(g, seed, target);
  const auto far = far_side(g, target);
  if (!witness_path(g, config, seed, far)) throw DomainError("the seed is not connected to the target");
  std::vector<ParentId> out;
  for (ParentId e = 0; e < g.parent_count(); ++e)
    if (config.is_open(e) && !witness_path(g, config, seed, far, e)) out.push_back(e);
  return out;
}

SausageDecomposition sausage_decompose(const SlabGraph& g, const perc::Configuration& config, VertexId seed,
                                       const perc::SphereTarget& target) {
  return sausage_decompose(g, config, seed, target, pivotal_parents(g, config, seed, target));
}

SausageDecomposition sausage_decompose(const SlabGraph& g, const perc::Configuration& config, VertexId seed,
                                       const perc::SphereTarget& target, const std::vector<ParentId>& pivotal) {
  check_seed(g, seed, target);
  const auto far = far_side(g, target);
  const auto path = witness_path(g, config, seed, far);
  if (!path) throw DomainError("the seed is not connected to the target");
  std::vector<char> is_pivotal(g.parent_count(), 0), used(g.parent_count(), 0);
  for (ParentId e : pivotal) is_pivotal[e] = 1;

  SausageDecomposition out;
  for (const auto& step : *path) {
    const ParentId e = g.fragment(step.fragment).parent;
    if (!is_pivotal[e]) continue;
    if (used[e]) throw DomainError("witness path crosses a pivotal edge twice");
    used[e] = 1;
    out.pivotal_edges.push_back({e, step.fragment, step.from, step.to});
  }
  if (out.pivotal_edges.size() != pivotal.size())
    throw Error("a pivotal edge is missing from the witness path");

  std::vector<std::pair<std::uint32_t, std::uint32_t>> open_edges;
  for (const auto& f : g.fragments())
    if (config.is_open(f.parent)) open_edges.emplace_back(f.u, f.v);
  VertexId prev = seed;
  for (const auto& pe : out.pivotal_edges) {
    out.rho.push_back(geom::d_eth(g.position(prev), g.position(pe.x)));
    const int flow = prev == pe.x ? 2 : edge_disjoint_paths(g.vertex_count(), open_edges, prev, pe.x, 2);
    out.flows.push_back(flow);
    out.menger_ok = out.menger_ok && flow >= 2;
    prev = pe.y;
  }
  return out;
}

std::vector<double> realizable_rho_values(const SlabGraph& g) {
  std::vector<double> vals;
  for (VertexId u = 0; u < g.vertex_count(); ++u)
    for (VertexId v = u; v < g.vertex_count(); ++v) vals.push_back(geom::d_eth(g.position(u), g.position(v)));
  std::sort(vals.begin(), vals.end());
  std::vector<double> out;
  for (double x : vals)
    if (out.empty() || x - out.back() > 1e-12) out.push_back(x);
  return out;
}

DominatingCurve gadget_dominating_curve(const SlabGraph& g, std::size_t cap) {
  struct Cache {
    std::mutex mutex;
    std::map<double, std::vector<PolyInP>> polys;
  };
  auto cache = std::make_shared<Cache>();
  return [g, cap, cache](double r, const mpq_class& p) {
    std::vector<PolyInP> polys;
    {
      std::lock_guard lock(cache->mutex);
      auto it = cache->polys.find(r);
      if (it == cache->polys.end()) {
        std::vector<PolyInP> per_vertex;
        for (VertexId y = 0; y < g.vertex_count(); ++y)
          per_vertex.push_back(exact_prob(g, EventSpec::reaches_sphere(g, y, r), cap));
        it = cache->polys.emplace(r, std::move(per_vertex)).first;
      }
      polys = it->second;
    }
    mpq_class best = 0;
    for (const auto& poly : polys) best = std::max(best, poly(p));
    return best;
  };
}

SausReport verify_saus(const SlabGraph& g, VertexId seed, const std::vector<double>& r_grid,
                       const std::vector<mpq_class>& p_grid, const DominatingCurve& gp, std::size_t cap) {
  const std::size_t m = g.parent_count();
  if (m > cap) throw OracleCapError("sausage check over " + std::to_string(m) + " edges exceeds the cap");
  SausReport rep;
  rep.a = g.max_fragment_projection();
  const std::vector<double> values = realizable_rho_values(g);
  auto index_of = [&](double x) {
    const auto it = std::lower_bound(values.begin(), values.end(), x - 1e-12);
    if (it == values.end() || std::abs(*it - x) > 1e-12) throw Error("rho value outside the realizable set");
    return static_cast<int>(it - values.begin());
  };
  // g at every realizable radius and grid point.
  std::vector<std::vector<mpq_class>> g_at(values.size());
  for (std::size_t j = 0; j < values.size(); ++j)
    for (const auto& p : p_grid) g_at[j].push_back(gp(values[j], p));

  bool first_margin = true;
  for (double r : r_grid) {
    const auto event = EventSpec::reaches_sphere(g, seed, r);
    const auto& target = std::get<perc::SphereTarget>(event.target);
    const EventTable table(g, event, cap);
    // rho-index vector -> counts of open sets by size
    std::map<std::vector<int>, std::vector<std::uint64_t>> groups;
    for (std::uint64_t w = 0; w < table.size(); ++w) {
      if (!table[w]) continue;
      ++rep.conditioned_configs;
      const auto config = perc::Configuration::from_mask(m, w);
      std::vector<ParentId> pivotal;
      for (ParentId e = 0; e < m; ++e)
        if (((w >> e) & 1U) && !table[w ^ (std::uint64_t{1} << e)]) pivotal.push_back(e);
      const auto dec = sausage_decompose(g, config, seed, target, pivotal);
      rep.menger_ok = rep.menger_ok && dec.menger_ok;
      rep.max_pivotal = std::max(rep.max_pivotal, dec.rho.size());
      std::vector<int> key;
      for (double x : dec.rho) key.push_back(index_of(x));
      auto& counts = groups[key];
      counts.resize(m + 1, 0);
      ++counts[static_cast<std::size_t>(std::popcount(w))];
    }
    if (groups.empty()) continue;
    // Each group's weight Pr(rho = key, A) at every grid point.
    std::vector<std::pair<std::vector<int>, std::vector<mpq_class>>> weights;
    for (const auto& [key, counts] : groups) {
      const PolyInP poly = PolyInP::from_counts(counts, m);
      std::vector<mpq_class> at;
      for (const auto& p : p_grid) at.push_back(poly(p));
      weights.emplace_back(key, std::move(at));
    }
    std::size_t max_n = 0;
    for (const auto& [key, at] : weights) max_n = std::max(max_n, key.size());

    for (std::size_t k = 1; k <= max_n + 1; ++k) {
      std::map<std::vector<int>, std::vector<std::size_t>> prefixes;
      for (std::size_t gi = 0; gi < weights.size(); ++gi)
        if (weights[gi].first.size() >= k - 1)
          prefixes[std::vector<int>(weights[gi].first.begin(), weights[gi].first.begin() + static_cast<long>(k - 1))]
              .push_back(gi);
      const double budget = r - static_cast<double>(k - 1) * rep.a + 1e-12;
      for (const auto& [prefix, members] : prefixes) {
        double used = 0.0;
        for (int idx : prefix) used += values[static_cast<std::size_t>(idx)];
        for (std::size_t j = 0; j < values.size(); ++j) {
          if (used + values[j] > budget) {
            ++rep.tuples_skipped;
            continue;
          }
          ++rep.tuples_checked;
          for (std::size_t pi = 0; pi < p_grid.size(); ++pi) {
            mpq_class lhs = 0, base = 0;
            for (std::size_t gi : members) {
              const auto& [key, at] = weights[gi];
              base += at[pi];
              if (key.size() >= k && static_cast<std::size_t>(key[k - 1]) < j) lhs += at[pi];
            }
            const mpq_class margin = lhs - (1 - g_at[j][pi]) * base;
            ++rep.comparisons;
            if (first_margin || margin < rep.min_margin) rep.min_margin = margin;
            first_margin = false;
            if (margin < 0) {
              ++rep.violations;
              if (rep.failures.size() < 20)
                rep.failures.push_back("r=" + std::to_string(r) + " k=" + std::to_string(k) +
                                       " r_k=" + std::to_string(values[j]) + " p=" + p_grid[pi].get_str() +
                                       " margin=" + std::to_string(margin.get_d()));
            }
          }
        }
      }
    }
  }
  if (first_margin) rep.min_margin = 0;
  return rep;
}

}  // namespace hypgrowth::oracle
