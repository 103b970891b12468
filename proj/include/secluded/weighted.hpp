#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <vector>

#include "secluded/errors.hpp"
#include "secluded/graph.hpp"
#include "secluded/oracle.hpp"

namespace secluded {

inline std::vector<Weight> dijkstra(const Graph& g, Vertex root) {
  g.check_vertex(root);
  std::vector<Weight> dist(g.n(), kInfinity);
  using Item = std::pair<Weight, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[static_cast<std::size_t>(root)] = 0;
  heap.emplace(0, root);
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d != dist[static_cast<std::size_t>(v)]) continue;
    for (auto w : g.neighbors(v)) {
      auto nd = d + g.weight(v, w);
      auto& cur = dist[static_cast<std::size_t>(w)];
      if (nd < cur) {
        cur = nd;
        heap.emplace(nd, w);
      }
    }
  }
  return dist;
}

struct WeightedStats {
  Weight distance = 0;
  std::uint64_t expansions = 0;
  std::uint64_t shortest_paths = 0;
};

// Enumerates the s-t paths of weight exactly d = dist(s, t); each has at most
// d edges. Extensions with partial weight + dist(v, t) > d are cut. Returns
// the lexicographically first path with the fewest neighbors.
inline std::optional<PathWitness> weighted_shortest_secluded(const Graph& g,
                                                             std::uint64_t budget = kDefaultExpansionBudget,
                                                             WeightedStats* stats = nullptr) {
  g.require_terminals();
  auto to_t = dijkstra(g, g.t());
  const auto d = to_t[static_cast<std::size_t>(g.s())];
  if (d == kInfinity) return std::nullopt;
  WeightedStats local;
  local.distance = d;
  std::optional<PathWitness> best;
  std::vector<Vertex> path{g.s()};
  std::vector<char> on(g.n(), 0);
  on[static_cast<std::size_t>(g.s())] = 1;

  std::function<void(Weight)> extend = [&](Weight sofar) {
    auto last = path.back();
    if (last == g.t()) {
      if (sofar != d) throw InternalError("weighted enumeration reached t off the shortest distance");
      if (static_cast<Weight>(path.size() - 1) > d) throw InternalError("shortest path with more than d edges");
      ++local.shortest_paths;
      auto w = make_witness(g, path);
      if (!best || w.neighbor_count < best->neighbor_count) best = std::move(w);
      return;
    }
    for (auto w : g.neighbors(last)) {
      if (on[static_cast<std::size_t>(w)]) continue;
      auto next = sofar + g.weight(last, w);
      auto rest = to_t[static_cast<std::size_t>(w)];
      if (rest == kInfinity || next + rest > d) continue;
      if (++local.expansions > budget) throw BudgetError("weighted path enumeration budget exceeded");
      on[static_cast<std::size_t>(w)] = 1;
      path.push_back(w);
      extend(next);
      path.pop_back();
      on[static_cast<std::size_t>(w)] = 0;
    }
  };
  extend(0);
  if (stats) *stats = local;
  if (best) validate_witness(g, *best);
  return best;
}

}  // namespace secluded
