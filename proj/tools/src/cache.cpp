#include "cache.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>

#include "hypgrowth/graph_io.hpp"
#include "hypgrowth/report.hpp"

namespace hypgrowth::cli {

namespace {

struct Fnv {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) h = (h ^ p[i]) * 0x100000001b3ULL;
  }
  void add(double x) { bytes(&x, sizeof x); }
  void add(const std::string& s) { bytes(s.data(), s.size()); }
};

}  // namespace

CachingFamily::CachingFamily(std::unique_ptr<graph::GraphFamily> inner, std::filesystem::path dir)
    : inner_(std::move(inner)), dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

graph::EmbeddedGraph CachingFamily::generate(const geom::Isometry& placement, const graph::Region& region) const {
  Fnv key;
  key.add(inner_->name());
  const auto& m = placement.lorentz();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) key.add(m(i, j));
  key.add(static_cast<double>(region.kind));
  key.add(region.radius);
  key.add(region.lo);
  key.add(region.hi);
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(key.h));
  std::string stem;
  for (char c : inner_->name()) stem += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  const auto path = dir_ / (stem + "-" + hex + ".json");
  if (std::filesystem::exists(path)) return graph::load_graph(path);
  auto g = inner_->generate(placement, region);
  report::write_atomic(path, graph::to_json(g));
  return g;
}

std::unique_ptr<graph::GraphFamily> open_family(const std::string& spec) {
  auto family = graph::make_family(spec);
  const char* dir = std::getenv("HYPGROWTH_CACHE");
  if (dir && *dir) return std::make_unique<CachingFamily>(std::move(family), dir);
  return family;
}

}  // namespace hypgrowth::cli
