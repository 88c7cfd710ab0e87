#include "hypgrowth/graph_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hypgrowth/errors.hpp"

namespace hypgrowth::graph {

namespace {

const char* coverage_kind_name(Coverage::Kind k) {
  switch (k) {
    case Coverage::Kind::complete:
      return "complete";
    case Coverage::Kind::ball:
      return "ball";
    case Coverage::Kind::band_box:
      return "band_box";
  }
  return "complete";
}

void write_point(std::ostringstream& out, const Point& p) {
  out << '[';
  for (int i = 0; i + 1 < p.dimension(); ++i) out << format_double(p.horizontal(i)) << ',';
  out << format_double(p.height()) << ']';
}

std::string escape(const std::string& s) { return nlohmann::json(s).dump(); }

Point read_point(const nlohmann::json& j, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) throw DomainError("vertex has wrong arity");
  std::array<double, geom::kMaxDimension - 1> u{};
  for (int i = 0; i + 1 < dim; ++i) u[static_cast<std::size_t>(i)] = j[static_cast<std::size_t>(i)].get<double>();
  return Point(std::span<const double>(u.data(), static_cast<std::size_t>(dim - 1)),
               j[static_cast<std::size_t>(dim - 1)].get<double>());
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_json(const EmbeddedGraph& g, const std::optional<std::string>& gadget_name) {
  std::ostringstream out;
  out << "{\n  \"dimension\": " << g.dimension() << ",\n";
  if (gadget_name) out << "  \"gadget_name\": " << escape(*gadget_name) << ",\n";
  out << "  \"origin_index\": " << g.origin_index() << ",\n  \"vertices\": [";
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    out << (v ? ",\n    " : "\n    ");
    write_point(out, g.vertex(static_cast<VertexId>(v)));
  }
  out << "\n  ],\n  \"edges\": [";
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    out << (e ? "," : "") << (e % 8 == 0 ? "\n    " : " ") << '[' << g.edges()[e].u << ',' << g.edges()[e].v << ']';
  const GraphMeta& m = g.meta();
  out << "\n  ],\n  \"meta\": {\n    \"family\": " << escape(m.family) << ",\n    \"params\": {";
  bool first = true;
  for (const auto& [k, v] : m.params) {
    out << (first ? "" : ", ") << escape(k) << ": " << escape(v);
    first = false;
  }
  out << "},\n    \"edge_shape\": \"" << (m.shape == EdgeShape::geodesic ? "geodesic" : "straight") << "\",\n";
  out << "    \"max_edge_length\": " << format_double(m.max_edge_length) << ",\n";
  out << "    \"generation_radius\": " << format_double(m.generation_radius);
  if (m.coverage) {
    const Coverage& c = *m.coverage;
    out << ",\n    \"coverage\": {\"kind\": \"" << coverage_kind_name(c.kind) << '"';
    if (c.kind != Coverage::Kind::complete) {
      out << ", \"center\": ";
      write_point(out, c.center);
      out << ", \"radius\": " << format_double(c.radius) << ", \"lo\": " << format_double(c.lo)
          << ", \"hi\": " << format_double(c.hi);
    }
    out << '}';
  }
  out << "\n  }\n}\n";
  return out.str();
}

EmbeddedGraph from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("graph file is not valid JSON: ") + e.what());
  }
  try {
    const int dim = j.at("dimension").get<int>();
    std::vector<Point> vs;
    for (const auto& v : j.at("vertices")) vs.push_back(read_point(v, dim));
    std::vector<Edge> es;
    for (const auto& e : j.at("edges")) es.push_back({e.at(0).get<VertexId>(), e.at(1).get<VertexId>()});
    GraphMeta meta;
    meta.coverage.reset();
    if (j.contains("meta")) {
      const auto& m = j["meta"];
      meta.family = m.value("family", "custom");
      if (m.contains("params"))
        for (const auto& [k, v] : m["params"].items()) meta.params[k] = v.get<std::string>();
      meta.shape = m.value("edge_shape", "geodesic") == "straight" ? EdgeShape::straight : EdgeShape::geodesic;
      meta.max_edge_length = m.value("max_edge_length", 0.0);
      meta.generation_radius = m.value("generation_radius", 0.0);
      if (m.contains("coverage")) {
        const auto& c = m["coverage"];
        const std::string kind = c.at("kind").get<std::string>();
        if (kind == "complete") {
          meta.coverage = Coverage::complete();
        } else {
          const Point center = read_point(c.at("center"), dim);
          if (kind == "ball") {
            meta.coverage = Coverage::ball(center, c.at("radius").get<double>());
          } else if (kind == "band_box") {
            meta.coverage = Coverage::band_box(center, c.at("radius").get<double>(), c.at("lo").get<double>(),
                                               c.at("hi").get<double>());
          } else {
            throw DomainError("unknown coverage kind " + kind);
          }
        }
      }
    }
    return EmbeddedGraph(dim, std::move(vs), std::move(es), j.at("origin_index").get<VertexId>(), std::move(meta));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed graph file: ") + e.what());
  }
}

void save_graph(const EmbeddedGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << to_json(g);
}

EmbeddedGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read graph file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

std::string graph_hash(const EmbeddedGraph& g) {
  const std::string text = to_json(g);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) h = (h ^ c) * 0x100000001b3ULL;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace hypgrowth::graph
