#pragma once

#include <filesystem>
#include <memory>

#include "hypgrowth/family.hpp"

namespace hypgrowth::cli {

// Stores every generated graph under `dir`, keyed by family, placement and region, and reloads it
// on the next request.  The file format round-trips coordinates exactly, so cached and fresh
// graphs give identical results.
class CachingFamily final : public graph::GraphFamily {
 public:
  CachingFamily(std::unique_ptr<graph::GraphFamily> inner, std::filesystem::path dir);
  std::string name() const override { return inner_->name(); }
  int dimension() const override { return inner_->dimension(); }
  double max_edge_length() const override { return inner_->max_edge_length(); }
  double projection_bound() const override { return inner_->projection_bound(); }
  graph::EmbeddedGraph generate(const geom::Isometry& placement, const graph::Region& region) const override;

 private:
  std::unique_ptr<graph::GraphFamily> inner_;
  std::filesystem::path dir_;
};

// The family named by `spec`, cached when HYPGROWTH_CACHE names a directory.
std::unique_ptr<graph::GraphFamily> open_family(const std::string& spec);

}  // namespace hypgrowth::cli
