#include "hypgrowth/gadgets.hpp"

#include <cstdio>
#include <fstream>
#include <queue>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hypgrowth/errors.hpp"
#include "hypgrowth/tiling.hpp"

namespace hypgrowth::oracle {

using graph::Fragment;
using graph::ParentId;
using nlohmann::json;

namespace {

std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

}  // namespace

std::vector<EventSpec> Gadget::events() const {
  std::vector<EventSpec> out;
  if (terminal)
    out.push_back(EventSpec::connects({seed}, perc::VertexTarget{{*terminal}, "terminal"}, name + ":seed<->terminal"));
  for (double r : radii)
    out.push_back(EventSpec::reaches_sphere(graph, seed, r, name + ":seed<->S_" + short_number(r)));
  return out;
}

Gadget make_gadget(std::string name, const std::vector<std::pair<double, double>>& positions,
                   const std::vector<std::pair<VertexId, VertexId>>& edges, std::optional<VertexId> terminal,
                   std::vector<double> radii) {
  std::vector<geom::Point> pts;
  std::vector<std::int64_t> original;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    pts.emplace_back(std::initializer_list<double>{positions[i].first}, positions[i].second);
    original.push_back(static_cast<std::int64_t>(i));
  }
  std::vector<Fragment> frags;
  for (std::size_t e = 0; e < edges.size(); ++e)
    frags.push_back({edges[e].first, edges[e].second, static_cast<ParentId>(e)});
  Gadget g;
  g.name = std::move(name);
  g.graph = SlabGraph(2, std::move(pts), std::move(original), std::move(frags), edges.size(), VertexId{0});
  g.terminal = terminal;
  g.radii = std::move(radii);
  return g;
}

Gadget cut_tiling_gadget(std::string name, int p, int q, double h, double angle, double delta,
                         std::size_t parents) {
  const double radius = 3.0 * graph::tiling_edge_length(p, q) + 1.0;
  const auto phi = geom::Isometry::phi(h, geom::rotation2(angle));
  const auto tiling = graph::generate_tiling(p, q, phi, graph::Region::ball(radius));
  const SlabGraph clip = graph::clip_to_band(tiling.graph, delta, 1.0);
  if (!clip.origin()) throw Error("placed origin fell outside the slab");
  std::vector<ParentId> order;
  std::vector<char> taken(clip.parent_count(), 0), seen(clip.vertex_count(), 0);
  std::queue<VertexId> bfs;
  bfs.push(*clip.origin());
  seen[*clip.origin()] = 1;
  while (!bfs.empty() && order.size() < parents) {
    const VertexId v = bfs.front();
    bfs.pop();
    for (std::uint32_t f : clip.incident(v)) {
      const ParentId e = clip.fragment(f).parent;
      if (!taken[e] && order.size() < parents) {
        taken[e] = 1;
        order.push_back(e);
      }
      const VertexId w = clip.other_end(f, v);
      if (taken[e] && !seen[w]) {
        seen[w] = 1;
        bfs.push(w);
      }
    }
  }
  Gadget g;
  g.name = std::move(name);
  g.graph = clip.restrict_to_parents(order);
  g.slab = true;
  g.seed = *g.graph.origin();
  double reach = 0.0;
  for (VertexId v = 0; v < g.graph.vertex_count(); ++v) reach = std::max(reach, g.graph.deth_origin(v));
  for (double frac : {0.35, 0.7, 1.0}) g.radii.push_back(frac * reach);
  return g;
}

std::vector<Gadget> slab_gadgets() {
  return {cut_tiling_gadget("slab-54-a", 5, 4, 0.5, 0.3, 0.5 / 16, 10),
          cut_tiling_gadget("slab-54-b", 5, 4, 0.8, 1.1, 0.05, 12),
          cut_tiling_gadget("slab-37-a", 3, 7, 0.6, 0.7, 0.6 / 16, 11)};
}

std::vector<Gadget> gadget_corpus() {
  using P = std::pair<double, double>;
  std::vector<Gadget> c;
  c.push_back(make_gadget("single-edge", {P{0, 1}, P{1, 1}}, {{0, 1}}, 1, {1.0}));
  c.push_back(make_gadget("series-pair", {P{0, 1}, P{1, 1}, P{2, 1}}, {{0, 1}, {1, 2}}, 2, {1.0, 2.0}));
  c.push_back(make_gadget("parallel-pair", {P{0, 1}, P{1, 1}}, {{0, 1}, {0, 1}}, 1, {1.0}));
  c.push_back(make_gadget("triangle", {P{0, 1}, P{1, 1}, P{2, 1}}, {{0, 1}, {1, 2}, {0, 2}}, 2, {1.0, 2.0}));
  c.push_back(make_gadget("wheatstone", {P{0, 1}, P{1, 1}, P{1.5, 2}, P{2.5, 1}},
                          {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}}, 3, {1.0, 2.5}));
  c.push_back(make_gadget("theta", {P{0, 1}, P{1, 1}, P{1, 2}, P{2, 1}, P{3, 1}},
                          {{0, 1}, {1, 3}, {0, 2}, {2, 3}, {3, 4}}, 4, {2.0, 3.0}));
  c.push_back(make_gadget("ladder", {P{0, 1}, P{1, 1}, P{2, 1}, P{3, 1}, P{0, 2}, P{1, 2}, P{2, 2}, P{3, 2}},
                          {{0, 1}, {1, 2}, {2, 3}, {4, 5}, {5, 6}, {6, 7}, {0, 4}, {1, 5}, {2, 6}, {3, 7}}, 7,
                          {1.0, 2.0, 3.0}));
  c.push_back(make_gadget("doubled-path", {P{0, 1}, P{1, 1}, P{2, 1}, P{3, 1}},
                          {{0, 1}, {0, 1}, {1, 2}, {1, 2}, {2, 3}, {2, 3}}, 3, {3.0}));
  c.push_back(make_gadget("k4", {P{0, 1}, P{1, 1}, P{2, 1}, P{3, 1}},
                          {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, 3, {1.0, 2.0, 3.0}));
  c.push_back(make_gadget("star", {P{0, 1}, P{-2, 1}, P{-1, 1}, P{1, 1}, P{2, 1}}, {{0, 1}, {0, 2}, {0, 3}, {0, 4}},
                          4, {1.0, 2.0}));
  c.push_back(make_gadget("cycle5", {P{0, 1}, P{1, 1}, P{2, 1}, P{3, 1}, P{1.5, 3}},
                          {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}, 3, {1.5, 3.0}));
  c.push_back(make_gadget("path4", {P{0, 1}, P{1, 1}, P{2, 1}, P{3, 1}, P{4, 1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}},
                          4, {2.0, 4.0}));
  c.push_back(make_gadget("vertical-chain", {P{0, 1}, P{0, 0.5}, P{0, 0.25}}, {{0, 1}, {1, 2}}, 2, {0.5}));
  c.push_back(make_gadget("bowtie", {P{0, 1}, P{1, 2}, P{1.5, 1}, P{2, 2}, P{3, 1}},
                          {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}}, 4, {1.5, 3.0}));
  c.push_back(make_gadget("diamond", {P{0, 1}, P{1, 1}, P{1, 2}, P{2, 1}}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, 3,
                          {1.0, 2.0}));
  c.push_back(make_gadget("parallel-series", {P{0, 1}, P{1, 1}, P{2, 1}, P{3, 1}},
                          {{0, 1}, {0, 1}, {1, 2}, {2, 3}, {2, 3}}, 3, {1.0, 2.0, 3.0}));
  c.push_back(make_gadget("binary-tree", {P{0, 1}, P{-1, 1}, P{1, 1}, P{-1.5, 2}, P{-0.5, 2}, P{0.5, 2}, P{1.5, 2}},
                          {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}}, 6, {1.0, 1.5}));
  c.push_back(make_gadget("grid-2x3", {P{0, 1}, P{1, 1}, P{2, 1}, P{0, 2}, P{1, 2}, P{2, 2}},
                          {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {0, 3}, {1, 4}, {2, 5}}, 5, {1.0, 2.0}));
  c.push_back(make_gadget("wheel4", {P{0, 1}, P{1, 1}, P{0, 3}, P{-1, 1}, P{0, 0.4}},
                          {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {2, 3}, {3, 4}, {4, 1}}, 2, {0.5, 1.0}));
  c.push_back(make_gadget("k23", {P{0, 1}, P{2, 1}, P{1, 2}, P{1, 1}, P{1, 0.5}},
                          {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}}, 1, {1.0, 2.0}));
  for (auto& g : slab_gadgets()) c.push_back(std::move(g));
  return c;
}

Gadget find_gadget(const std::string& name) {
  for (auto& g : gadget_corpus())
    if (g.name == name) return g;
  throw DomainError("unknown gadget '" + name + "'");
}

std::string gadget_to_json(const Gadget& g) {
  const auto& s = g.graph;
  json j;
  j["dimension"] = s.dimension();
  json verts = json::array();
  for (VertexId v = 0; v < s.vertex_count(); ++v) {
    json row = json::array();
    for (double x : s.position(v).horizontal()) row.push_back(x);
    row.push_back(s.position(v).height());
    verts.push_back(row);
  }
  j["vertices"] = verts;
  json edges = json::array(), parents = json::array();
  for (const auto& f : s.fragments()) {
    edges.push_back({f.u, f.v});
    parents.push_back(f.parent);
  }
  j["edges"] = edges;
  j["parents"] = parents;
  j["parent_count"] = s.parent_count();
  j["origin_index"] = s.origin().value_or(g.seed);
  j["gadget_name"] = g.name;
  j["seed_index"] = g.seed;
  if (g.terminal) j["terminal_index"] = *g.terminal;
  j["radii"] = g.radii;
  j["meta"] = {{"family", g.slab ? "slab-gadget" : "gadget"},
               {"shape", s.shape() == graph::EdgeShape::geodesic ? "geodesic" : "straight"},
               {"band", {s.lo(), s.hi()}}};
  return j.dump(2);
}

Gadget gadget_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    const int dim = j.at("dimension").get<int>();
    std::vector<geom::Point> pts;
    std::vector<std::int64_t> original;
    for (const auto& row : j.at("vertices")) {
      auto coords = row.get<std::vector<double>>();
      if (static_cast<int>(coords.size()) != dim) throw ConfigError("vertex has wrong dimension");
      pts.emplace_back(std::span<const double>(coords.data(), coords.size() - 1), coords.back());
      original.push_back(static_cast<std::int64_t>(original.size()));
    }
    const auto edges = j.at("edges").get<std::vector<std::array<VertexId, 2>>>();
    std::vector<ParentId> parents;
    if (j.contains("parents"))
      parents = j.at("parents").get<std::vector<ParentId>>();
    else
      for (std::size_t e = 0; e < edges.size(); ++e) parents.push_back(static_cast<ParentId>(e));
    if (parents.size() != edges.size()) throw ConfigError("parents array does not match edges");
    std::size_t parent_count = j.value("parent_count", std::size_t{0});
    std::vector<Fragment> frags;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (edges[e][0] >= pts.size() || edges[e][1] >= pts.size()) throw ConfigError("edge index out of range");
      frags.push_back({edges[e][0], edges[e][1], parents[e]});
      parent_count = std::max<std::size_t>(parent_count, parents[e] + 1);
    }
    Gadget g;
    g.name = j.value("gadget_name", std::string("unnamed"));
    g.seed = j.value("seed_index", j.value("origin_index", VertexId{0}));
    if (j.contains("terminal_index")) g.terminal = j.at("terminal_index").get<VertexId>();
    g.radii = j.value("radii", std::vector<double>{});
    g.slab = j.contains("meta") && j["meta"].value("family", std::string()) == "slab-gadget";
    g.graph = SlabGraph(dim, std::move(pts), std::move(original), std::move(frags), parent_count,
                        j.value("origin_index", VertexId{0}));
    if (j.contains("meta") && j["meta"].contains("band")) {
      const auto band = j["meta"]["band"].get<std::array<double, 2>>();
      g.graph.set_band(band[0], band[1]);
    }
    if (j.contains("meta") && j["meta"].value("shape", std::string("geodesic")) == "straight")
      g.graph.set_shape(graph::EdgeShape::straight);
    return g;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed gadget file: ") + e.what());
  }
}

void save_gadget(const Gadget& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << gadget_to_json(g) << '\n';
}

Gadget load_gadget(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open gadget file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return gadget_from_json(ss.str());
}

}  // namespace hypgrowth::oracle
