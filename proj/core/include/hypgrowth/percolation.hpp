#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hypgrowth/rng.hpp"
#include "hypgrowth/slab_graph.hpp"

namespace hypgrowth::perc {

using graph::ParentId;
using graph::SlabGraph;
using graph::VertexId;

// Open/closed state per parent edge.  Sampled states come from counter-based uniforms
// u(seed, e), open iff u < p, so equal seeds couple all values of p monotonically.
class Configuration {
 public:
  static Configuration sample(std::size_t parent_count, double p, std::uint64_t seed);
  static Configuration sample(const SlabGraph& g, double p, std::uint64_t seed);
  static Configuration from_states(std::vector<std::uint8_t> states, double p = 0.0);
  static Configuration from_mask(std::size_t parent_count, std::uint64_t mask);

  double p() const { return p_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t size() const { return states_.size(); }
  bool is_open(ParentId e) const { return states_[e] != 0; }
  std::size_t open_count() const;
  const std::vector<std::uint8_t>& states() const { return states_; }
  double uniform(ParentId e) const { return edge_uniform(seed_, e); }

 private:
  double p_ = 0.0;
  std::uint64_t seed_ = 0;
  std::vector<std::uint8_t> states_;
};

struct SphereTarget {
  std::vector<double> center;  // horizontal centre
  double r = 0.0;
  std::string tag = "sphere";
};

struct BoxTarget {
  std::vector<double> center;
  double r = 0.0;
  std::optional<double> h;
  std::string tag = "box";
};

struct VertexTarget {
  std::vector<VertexId> vertices;
  std::string tag = "vertices";
};

using Target = std::variant<VertexTarget, SphereTarget, BoxTarget>;

struct ClusterReport {
  double size_r = 0.0;              // sup of d_eth to o over the cluster
  double proj_diameter = 0.0;       // Euclidean diameter of the horizontal projection
  double proj_diameter_linf = 0.0;  // l-infinity diameter of the same set
  std::size_t vertex_count = 0;
  double max_height = 0.0;
  std::vector<std::string> touches;
  std::vector<VertexId> vertices;
};

struct Partition {
  std::vector<std::uint32_t> label;  // cluster index per vertex
  std::vector<std::vector<VertexId>> members;
};

Partition clusters(const SlabGraph& g, const Configuration& config);
ClusterReport cluster_of(const SlabGraph& g, const Configuration& config, VertexId v,
                         const std::vector<Target>& probes = {});

// Statistics of a vertex set that is closed under open fragments.
ClusterReport describe_cluster(const SlabGraph& g, const Configuration& config,
                               const std::vector<VertexId>& members, const std::vector<Target>& probes = {});

// Whether the cluster formed by `members` meets the target (fragment interiors included).
bool cluster_hits(const SlabGraph& g, const Configuration& config, const std::vector<VertexId>& members,
                  const Target& target);

// True iff an open path meets both the source vertices and the target.
bool connects(const SlabGraph& g, const Configuration& config, const std::vector<VertexId>& sources,
              const Target& target);

// Original vertices with d_eth(o, v) <= r0 and height <= 1.
std::vector<VertexId> thick_origin(const SlabGraph& g, double r0);

// Breadth-first cluster growth with lazily evaluated edge states; reusable across trials.
class ClusterExplorer {
 public:
  explicit ClusterExplorer(const SlabGraph& g) : g_(&g), stamp_(g.vertex_count(), 0) {}

  // Explores the union of clusters of `seeds`; returns the largest d_eth to o reached.  Stops
  // early once that value reaches `stop_at`.
  template <class OpenFn>
  double explore(std::span<const VertexId> seeds, OpenFn&& is_open,
                 double stop_at = std::numeric_limits<double>::infinity()) {
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
    visited_.clear();
    double reach = -std::numeric_limits<double>::infinity();
    for (VertexId s : seeds)
      if (stamp_[s] != epoch_) {
        stamp_[s] = epoch_;
        visited_.push_back(s);
        reach = std::max(reach, g_->deth_origin(s));
      }
    for (std::size_t head = 0; head < visited_.size() && reach < stop_at; ++head) {
      const VertexId v = visited_[head];
      for (std::uint32_t f : g_->incident(v)) {
        const VertexId w = g_->other_end(f, v);
        if (stamp_[w] == epoch_ || !is_open(g_->fragment(f).parent)) continue;
        stamp_[w] = epoch_;
        visited_.push_back(w);
        reach = std::max(reach, g_->deth_origin(w));
      }
    }
    return reach;
  }

  const std::vector<VertexId>& visited() const { return visited_; }

 private:
  const SlabGraph* g_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<VertexId> visited_;
};

}  // namespace hypgrowth::perc
