#include "hypgrowth/ends.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "hypgrowth/errors.hpp"
#include "hypgrowth/gp_estimate.hpp"
#include "hypgrowth/parallel.hpp"
#include "hypgrowth/percolation.hpp"
#include "hypgrowth/rng.hpp"

namespace hypgrowth::ends {

namespace {

constexpr double kTol = 1e-12;

TowerCluster describe(const graph::SlabGraph& g, const std::vector<VertexId>& members) {
  TowerCluster c;
  c.vertex_count = members.size();
  const int axes = g.dimension() - 1;
  std::vector<double> lo(static_cast<std::size_t>(axes), std::numeric_limits<double>::infinity());
  std::vector<double> hi(static_cast<std::size_t>(axes), -std::numeric_limits<double>::infinity());
  for (VertexId v : members) {
    c.size_r = std::max(c.size_r, g.deth_origin(v));
    for (int i = 0; i < axes; ++i) {
      lo[static_cast<std::size_t>(i)] = std::min(lo[static_cast<std::size_t>(i)], g.position(v).horizontal(i));
      hi[static_cast<std::size_t>(i)] = std::max(hi[static_cast<std::size_t>(i)], g.position(v).horizontal(i));
    }
  }
  for (int i = 0; i < axes; ++i)
    c.proj_diameter_linf = std::max(c.proj_diameter_linf, hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)]);
  if (axes == 1) {
    c.proj_diameter = c.proj_diameter_linf;
  } else {
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j)
        c.proj_diameter = std::max(c.proj_diameter,
                                   geom::l2_horizontal_distance(g.position(members[i]), g.position(members[j])));
  }
  return c;
}

// Clusters of one level that meet the probes.
template <class OpenFn>
std::vector<TowerCluster> probe_clusters(const graph::SlabGraph& g, const std::vector<VertexId>& probes,
                                         perc::ClusterExplorer& explorer, std::vector<char>& seen, OpenFn&& open) {
  std::vector<TowerCluster> out;
  std::vector<VertexId> touched;
  for (VertexId s : probes) {
    if (seen[s]) continue;
    const VertexId seeds[] = {s};
    explorer.explore(seeds, open);
    for (VertexId v : explorer.visited()) {
      seen[v] = 1;
      touched.push_back(v);
    }
    out.push_back(describe(g, explorer.visited()));
  }
  for (VertexId v : touched) seen[v] = 0;
  return out;
}

void require_tower_coverage(const graph::EmbeddedGraph& g, double reach, double y_min) {
  if (!g.meta().coverage) throw GuardBandError("graph carries no coverage information");
  const std::vector<double> center(static_cast<std::size_t>(g.dimension() - 1), 0.0);
  g.meta().coverage->require(center, reach, y_min, 1.0, g.meta().max_edge_length);
}

double relative(double a, double b, double scale) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), scale});
}

}  // namespace

SlabTower::SlabTower(const graph::EmbeddedGraph& g, double r, int k_max, std::optional<double> y_min)
    : r_(r), y_min_(y_min.value_or(std::ldexp(1.0, -(k_max + 3)))) {
  if (k_max < 0) throw DomainError("k_max must be non-negative");
  if (!(r > 0.0)) throw DomainError("r must be positive");
  if (!(y_min_ > 0.0 && y_min_ < std::ldexp(1.0, -k_max))) throw DomainError("lower cut must sit below every level");
  for (int k = 0; k <= k_max; ++k) {
    levels_.push_back(graph::clip_to_band(g, y_min_, std::ldexp(1.0, -k)));
    const auto& lv = levels_.back();
    std::vector<VertexId> probe;
    for (VertexId v = 0; v < lv.vertex_count(); ++v)
      if (lv.is_original(v) && lv.deth_origin(v) <= r + kTol) probe.push_back(v);
    probes_.push_back(std::move(probe));
  }
}

SlabTowerReport slab_tower(const SlabTower& tower, const std::vector<std::uint8_t>& edge_open, double delta) {
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  SlabTowerReport rep;
  rep.r = tower.r();
  rep.delta = delta;
  for (int k = 0; k <= tower.k_max(); ++k) {
    const auto& lv = tower.level(k);
    if (edge_open.size() < lv.parent_count()) throw DomainError("edge states do not cover the graph");
    perc::ClusterExplorer explorer(lv);
    std::vector<char> seen(lv.vertex_count(), 0);
    TowerLevel level;
    level.k = k;
    level.clusters = probe_clusters(lv, tower.probes(k), explorer, seen,
                                    [&](graph::ParentId e) { return edge_open[e] != 0; });
    for (const auto& c : level.clusters) {
      level.qualifies = level.qualifies || c.proj_diameter >= delta - kTol;
      rep.size_consistent = rep.size_consistent && c.size_r >= c.proj_diameter_linf / 2.0 - kTol;
      rep.metric_consistent = rep.metric_consistent && c.proj_diameter_linf <= c.proj_diameter + kTol &&
                              c.proj_diameter <= std::sqrt(lv.dimension() - 1.0) * c.proj_diameter_linf + kTol;
    }
    if (!rep.levels.empty() && level.qualifies && !rep.levels.back().qualifies) rep.monotone = false;
    rep.levels.push_back(std::move(level));
  }
  return rep;
}

SlabTowerReport slab_tower(const graph::EmbeddedGraph& g, const std::vector<std::uint8_t>& edge_open, double r,
                           double delta, int k_max) {
  const SlabTower tower(g, r, k_max);
  require_tower_coverage(g, r + delta, tower.y_min());
  return slab_tower(tower, edge_open, delta);
}

ScalingReport scaling_equivariance_check(const graph::EmbeddedGraph& g, int k, double p, std::uint64_t seed) {
  if (k < 0) throw DomainError("k must be non-negative");
  const double factor = std::ldexp(1.0, k);
  const auto small = graph::clip_to_band(g, 0.0, 1.0 / factor);
  const std::vector<double> zero(static_cast<std::size_t>(g.dimension() - 1), 0.0);
  const auto scaled = graph::transformed(g, geom::Isometry::scale_translate(factor, zero));
  const auto big = graph::clip_to_band(scaled, 0.0, 1.0);

  ScalingReport rep;
  rep.k = k;
  // Fragments of each parent, endpoints in a canonical order, coordinates of `small` scaled up.
  using Key = std::vector<double>;
  auto coords = [](const geom::Point& pt, double s) {
    Key c;
    for (double x : pt.horizontal()) c.push_back(x * s);
    c.push_back(pt.height() * s);
    return c;
  };
  auto collect = [&](const graph::SlabGraph& sg, double s) {
    std::map<graph::ParentId, std::vector<std::pair<Key, Key>>> by_parent;
    for (const auto& f : sg.fragments()) {
      auto a = coords(sg.position(f.u), s), b = coords(sg.position(f.v), s);
      if (b < a) std::swap(a, b);
      by_parent[f.parent].emplace_back(std::move(a), std::move(b));
    }
    for (auto& [parent, list] : by_parent) std::sort(list.begin(), list.end());
    return by_parent;
  };
  const auto lhs = collect(small, factor);
  const auto rhs = collect(big, 1.0);
  rep.fragments = small.fragment_count();
  if (small.fragment_count() != big.fragment_count())
    rep.fragment_mismatches += small.fragment_count() > big.fragment_count() ? small.fragment_count() - big.fragment_count()
                                                                              : big.fragment_count() - small.fragment_count();
  for (const auto& [parent, list] : lhs) {
    const auto it = rhs.find(parent);
    if (it == rhs.end() || it->second.size() != list.size()) {
      rep.fragment_mismatches += list.size();
      continue;
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto& [a1, b1] = list[i];
      const auto& [a2, b2] = it->second[i];
      double err = 0.0;
      for (std::size_t c = 0; c < a1.size(); ++c) {
        err = std::max(err, relative(a1[c], a2[c], a1.back()));
        err = std::max(err, relative(b1[c], b2[c], b1.back()));
      }
      rep.max_coordinate_error = std::max(rep.max_coordinate_error, err);
      if (err > 1e-9) ++rep.fragment_mismatches;
    }
  }
  for (const auto& [parent, list] : rhs)
    if (!lhs.count(parent)) rep.fragment_mismatches += list.size();

  // Same edge states on both sides: clusters must agree after scaling.
  const auto config = perc::Configuration::sample(g.edge_count(), p, seed);
  auto reports = [&](const graph::SlabGraph& sg, double s) {
    std::vector<std::array<double, 3>> out;
    const auto part = perc::clusters(sg, config);
    for (const auto& members : part.members) {
      const auto c = describe(sg, members);
      out.push_back({static_cast<double>(c.vertex_count), c.size_r * s, c.proj_diameter * s});
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  const auto rs = reports(small, factor), rb = reports(big, 1.0);
  rep.clusters = rs.size();
  if (rs.size() != rb.size()) {
    rep.max_report_error = std::numeric_limits<double>::infinity();
  } else {
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (int c = 0; c < 3; ++c)
        rep.max_report_error = std::max(rep.max_report_error, relative(rs[i][c], rb[i][c], 1e-12));
  }
  rep.passed = rep.fragment_mismatches == 0 && rep.max_coordinate_error <= 1e-9 && rep.max_report_error <= 1e-9;
  return rep;
}

SurveyReport end_boundary_survey(const graph::GraphFamily& family, double p, const std::vector<double>& deltas,
                                 double r, int k_max, std::size_t trials, std::uint64_t seed,
                                 const std::optional<TailFit>& fit, int threads) {
  if (!fit) throw DomainError("the survey needs a fitted (alpha, phi) tail");
  if (deltas.empty()) throw DomainError("empty delta grid");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
  for (double d : deltas)
    if (!(d > 0.0)) throw DomainError("delta must be positive");
  const double delta_max = *std::max_element(deltas.begin(), deltas.end());
  const double y_min = std::ldexp(1.0, -(k_max + 3));
  const int d = family.dimension();
  const auto g = family.generate(geom::Isometry::identity(d), graph::Region::band_box(r + delta_max, y_min, 1.0));
  require_tower_coverage(g, r + delta_max, y_min);
  const SlabTower tower(g, r, k_max, y_min);

  SurveyReport rep;
  rep.p = p;
  rep.r = r;
  rep.trials = trials;
  for (int k = 0; k <= k_max; ++k) rep.graph_vertices += tower.level(k).vertex_count();
  const std::size_t nk = static_cast<std::size_t>(k_max) + 1, nd = deltas.size();
  // Largest probe-cluster projection diameter per trial and level.
  std::vector<std::vector<double>> widest(trials, std::vector<double>(nk, 0.0));
  constexpr std::size_t kBlock = 64;
  const std::size_t blocks = (trials + kBlock - 1) / kBlock;
  parallel_for(blocks, threads > 0 ? threads : default_thread_count(), [&](std::size_t b) {
    std::vector<perc::ClusterExplorer> explorers;
    std::vector<std::vector<char>> seen;
    for (int k = 0; k <= k_max; ++k) {
      explorers.emplace_back(tower.level(k));
      seen.emplace_back(tower.level(k).vertex_count(), 0);
    }
    for (std::size_t t = b * kBlock; t < std::min(trials, (b + 1) * kBlock); ++t) {
      const std::uint64_t s = derive_seed(seed, {tag_of("ends"), t});
      auto open = [&](graph::ParentId e) { return edge_uniform(s, e) < p; };
      for (std::size_t k = 0; k < nk; ++k) {
        const auto clusters = probe_clusters(tower.level(static_cast<int>(k)), tower.probes(static_cast<int>(k)),
                                             explorers[k], seen[k], open);
        for (const auto& c : clusters) widest[t][k] = std::max(widest[t][k], c.proj_diameter);
      }
    }
  });
  std::vector<std::vector<std::uint64_t>> hits(nd, std::vector<std::uint64_t>(nk, 0));
  for (std::size_t t = 0; t < trials; ++t)
    for (std::size_t di = 0; di < nd; ++di)
      for (std::size_t k = 0; k < nk; ++k) {
        const bool q = widest[t][k] >= deltas[di] - kTol;
        hits[di][k] += q;
        if (k > 0 && q && widest[t][k - 1] < deltas[di] - kTol) ++rep.monotonicity_violations;
      }
  for (std::size_t di = 0; di < nd; ++di)
    for (std::size_t k = 0; k < nk; ++k) {
      SurveyRow row;
      row.delta = deltas[di];
      row.k = static_cast<int>(k);
      row.frequency = trials ? static_cast<double>(hits[di][k]) / static_cast<double>(trials) : 0.0;
      row.ci = decay::binomial_ci(hits[di][k], trials);
      const double scale = std::ldexp(1.0, static_cast<int>(k));
      row.bound = std::pow(scale, d - 1) * fit->alpha * std::exp(-fit->phi * deltas[di] * scale / 2.0);
      if (k > 0 && hits[di][k] > hits[di][k - 1]) rep.non_increasing = false;
      rep.rows.push_back(row);
    }
  return rep;
}

}  // namespace hypgrowth::ends
