#include "hypgrowth/max_flow.hpp"

#include <queue>

#include "hypgrowth/errors.hpp"

namespace hypgrowth::oracle {

int edge_disjoint_paths(std::size_t vertex_count, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                        std::uint32_t s, std::uint32_t t, int limit) {
  if (s >= vertex_count || t >= vertex_count) throw DomainError("flow terminal out of range");
  if (s == t) return limit;
  // Arc 2i runs u->v, arc 2i+1 runs v->u; each starts with capacity 1.
  std::vector<std::uint32_t> head(edges.size() * 2);
  std::vector<int> cap(edges.size() * 2, 1);
  std::vector<std::vector<std::uint32_t>> out(vertex_count);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto [u, v] = edges[i];
    if (u == v) continue;
    head[2 * i] = v;
    head[2 * i + 1] = u;
    out[u].push_back(static_cast<std::uint32_t>(2 * i));
    out[v].push_back(static_cast<std::uint32_t>(2 * i + 1));
  }
  int flow = 0;
  std::vector<std::int64_t> via(vertex_count);
  while (flow < limit) {
    std::fill(via.begin(), via.end(), -1);
    via[s] = -2;
    std::queue<std::uint32_t> q;
    q.push(s);
    while (!q.empty() && via[t] == -1) {
      const auto x = q.front();
      q.pop();
      for (auto arc : out[x])
        if (cap[arc] > 0 && via[head[arc]] == -1) {
          via[head[arc]] = arc;
          q.push(head[arc]);
        }
    }
    if (via[t] == -1) break;
    for (std::uint32_t x = t; x != s;) {
      const auto arc = static_cast<std::uint32_t>(via[x]);
      --cap[arc];
      ++cap[arc ^ 1U];
      x = head[arc ^ 1U];
    }
    ++flow;
  }
  return flow;
}

}  // namespace hypgrowth::oracle
