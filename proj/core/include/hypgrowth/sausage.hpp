#pragma once

#include <functional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hypgrowth/oracle.hpp"
#include "hypgrowth/percolation.hpp"

namespace hypgrowth::oracle {

using graph::ParentId;

struct PivotalEdge {
  ParentId parent = 0;
  std::size_t fragment = 0;  // fragment crossed by the witness path
  VertexId x = 0;            // end nearer the seed along the path
  VertexId y = 0;
};

struct SausageDecomposition {
  std::vector<PivotalEdge> pivotal_edges;
  std::vector<double> rho;  // rho_i = d_eth(y_{i-1}, x_i), y_0 = seed
  std::vector<int> flows;   // edge-disjoint open paths y_{i-1} -> x_i, capped at 2
  bool menger_ok = true;
};

// Vertices whose d_eth from the target centre is at least r (within 1e-9).
std::vector<char> far_side(const SlabGraph& g, const perc::SphereTarget& target);

// Open parents whose closing separates the seed from the target sphere, by brute force.
std::vector<ParentId> pivotal_parents(const SlabGraph& g, const perc::Configuration& config, VertexId seed,
                                      const perc::SphereTarget& target);

SausageDecomposition sausage_decompose(const SlabGraph& g, const perc::Configuration& config, VertexId seed,
                                       const perc::SphereTarget& target);
// Same, with the pivotal parents already known.
SausageDecomposition sausage_decompose(const SlabGraph& g, const perc::Configuration& config, VertexId seed,
                                       const perc::SphereTarget& target, const std::vector<ParentId>& pivotal);

// Every d_eth value between two vertices, sorted, duplicates within 1e-12 merged.
std::vector<double> realizable_rho_values(const SlabGraph& g);

// g(r, p): an upper curve for single-position connection probabilities.
using DominatingCurve = std::function<mpq_class(double r, const mpq_class& p)>;

// max over vertices y of Pr_p(y <-> S_r(y)) inside the gadget; cached per r.
DominatingCurve gadget_dominating_curve(const SlabGraph& g, std::size_t cap = kEnumerationCap);

struct SausReport {
  std::size_t conditioned_configs = 0;  // open sets on which A occurs, summed over the r grid
  std::size_t tuples_checked = 0;
  std::size_t tuples_skipped = 0;       // sum condition violated
  std::size_t comparisons = 0;          // tuple x p checks
  std::size_t violations = 0;
  std::size_t max_pivotal = 0;
  double a = 0.0;
  mpq_class min_margin = 1;
  bool menger_ok = true;
  std::vector<std::string> failures;
};

// Exact check of Pr(rho_k < r_k, rho_i = r_i (i<k), A) >= (1 - g(r_k)) Pr(rho_i = r_i (i<k), A) with
// A = seed <-> S_r(seed), over all realizable tuples with sum r_i <= r - (k-1) a.
SausReport verify_saus(const SlabGraph& g, VertexId seed, const std::vector<double>& r_grid,
                       const std::vector<mpq_class>& p_grid, const DominatingCurve& gp,
                       std::size_t cap = kEnumerationCap);

}  // namespace hypgrowth::oracle
