#pragma once

#include <climits>
#include <cstdint>
#include <utility>
#include <vector>

namespace hypgrowth::oracle {

// Maximum number of edge-disjoint s-t paths in an undirected multigraph (unit-capacity
// augmenting paths), stopping once `limit` is reached.
int edge_disjoint_paths(std::size_t vertex_count, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                        std::uint32_t s, std::uint32_t t, int limit = INT_MAX);

}  // namespace hypgrowth::oracle
