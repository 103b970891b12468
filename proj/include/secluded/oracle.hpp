#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "secluded/errors.hpp"
#include "secluded/graph.hpp"

namespace secluded {

// An explicit s-t path. Length counts vertices.
struct PathWitness {
  std::vector<Vertex> vertices;
  std::size_t neighbor_count = 0;
  std::optional<Weight> weight;

  [[nodiscard]] std::size_t length() const { return vertices.size(); }

  friend bool operator==(const PathWitness&, const PathWitness&) = default;
};

inline Weight path_weight(const Graph& g, const std::vector<Vertex>& path) {
  Weight total = 0;
  for (std::size_t i = 1; i < path.size(); ++i) total += g.weight(path[i - 1], path[i]);
  return total;
}

// Builds a witness for `path`, recomputing the neighbor count from scratch.
inline PathWitness make_witness(const Graph& g, std::vector<Vertex> path) {
  PathWitness w;
  w.neighbor_count = neighborhood_size(g, path);
  if (g.weighted()) w.weight = path_weight(g, path);
  w.vertices = std::move(path);
  return w;
}

// Throws InternalError unless `w` is a simple s-t path of g with consistent
// neighbor count and weight.
inline void validate_witness(const Graph& g, const PathWitness& w) {
  if (w.vertices.empty() || w.vertices.front() != g.s() || w.vertices.back() != g.t()) {
    throw InternalError("witness does not run from s to t");
  }
  if (!is_simple_path(g, w.vertices)) throw InternalError("witness is not a simple path");
  if (neighborhood_size(g, w.vertices) != w.neighbor_count) throw InternalError("witness neighbor count is stale");
  if (w.weight && *w.weight != path_weight(g, w.vertices)) throw InternalError("witness weight is stale");
}

// Decision table over (k, l): cell (k, l) is set when some s-t path has
// exactly k vertices and exactly l neighbors.
class KlTable {
 public:
  KlTable() = default;
  explicit KlTable(std::size_t n) : n_(n), cells_((n + 1) * (n + 1), 0) {}

  [[nodiscard]] std::size_t n() const { return n_; }

  void set(std::size_t k, std::size_t l) {
    if (k <= n_ && l <= n_) cells_[k * (n_ + 1) + l] = 1;
  }

  [[nodiscard]] bool exact(std::size_t k, std::size_t l) const {
    return k <= n_ && l <= n_ && cells_[k * (n_ + 1) + l] != 0;
  }

  // Some path with exactly k vertices and at most l neighbors.
  [[nodiscard]] bool length_exact(std::size_t k, std::size_t l) const {
    for (std::size_t j = 0; j <= std::min(l, n_); ++j) {
      if (exact(k, j)) return true;
    }
    return false;
  }

  // Some path with at most k vertices and at most l neighbors.
  [[nodiscard]] bool at_most(std::size_t k, std::size_t l) const {
    for (std::size_t i = 0; i <= std::min(k, n_); ++i) {
      if (length_exact(i, l)) return true;
    }
    return false;
  }

  friend bool operator==(const KlTable&, const KlTable&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<char> cells_;
};

inline constexpr std::uint64_t kDefaultExpansionBudget = 10'000'000;

// Calls `visit` for every simple s-t path with at most max_len vertices, in
// lexicographic order of the vertex sequence. Throws BudgetError once more
// than `budget` DFS extensions have been made.
inline void enumerate_st_paths(const Graph& g, std::size_t max_len,
                               const std::function<void(const PathWitness&)>& visit,
                               std::uint64_t budget = kDefaultExpansionBudget) {
  g.require_terminals();
  if (max_len < 2) throw InputError("max_len must be at least 2");
  std::vector<Vertex> path{g.s()};
  std::vector<char> on_path(g.n(), 0);
  on_path[static_cast<std::size_t>(g.s())] = 1;
  std::uint64_t expansions = 0;

  std::function<void()> extend = [&]() {
    auto last = path.back();
    for (auto w : g.neighbors(last)) {
      if (on_path[static_cast<std::size_t>(w)]) continue;
      if (++expansions > budget) throw BudgetError("path enumeration budget exceeded");
      path.push_back(w);
      if (w == g.t()) {
        auto witness = make_witness(g, path);
        visit(witness);
      } else if (path.size() < max_len) {
        on_path[static_cast<std::size_t>(w)] = 1;
        extend();
        on_path[static_cast<std::size_t>(w)] = 0;
      }
      path.pop_back();
    }
  };
  extend();
}

inline std::vector<PathWitness> collect_st_paths(const Graph& g, std::size_t max_len,
                                                 std::uint64_t budget = kDefaultExpansionBudget) {
  std::vector<PathWitness> out;
  enumerate_st_paths(g, max_len, [&](const PathWitness& w) { out.push_back(w); }, budget);
  return out;
}

// All (length, neighbor count) pairs realized by simple s-t paths.
inline KlTable bf_profile(const Graph& g, std::uint64_t budget = kDefaultExpansionBudget) {
  KlTable table(g.n());
  enumerate_st_paths(g, std::max<std::size_t>(g.n(), 2),
                     [&](const PathWitness& w) { table.set(w.length(), w.neighbor_count); }, budget);
  return table;
}

// Short Secluded Path: some s-t path with at most k vertices and at most l
// neighbors.
inline bool bf_short_secluded(const Graph& g, std::size_t k, std::size_t l,
                              std::uint64_t budget = kDefaultExpansionBudget) {
  if (k < 2) throw InputError("k must be at least 2");
  bool found = false;
  enumerate_st_paths(g, k, [&](const PathWitness& w) { found = found || w.neighbor_count <= l; }, budget);
  return found;
}

// Secluded k-Path: exactly k vertices; neighbors at most l, or exactly l when
// exact_l is set.
inline bool bf_secluded_kpath(const Graph& g, std::size_t k, std::size_t l, bool exact_l,
                              std::uint64_t budget = kDefaultExpansionBudget) {
  if (k < 2) throw InputError("k must be at least 2");
  bool found = false;
  enumerate_st_paths(
      g, k,
      [&](const PathWitness& w) {
        if (w.length() != k) return;
        found = found || (exact_l ? w.neighbor_count == l : w.neighbor_count <= l);
      },
      budget);
  return found;
}

// Shortest Secluded Path by enumeration: among the minimum-length (or
// minimum-weight, for weighted graphs) s-t paths, the lexicographically first
// one with the fewest neighbors.
inline std::optional<PathWitness> bf_shortest_secluded(const Graph& g,
                                                       std::uint64_t budget = kDefaultExpansionBudget) {
  std::optional<PathWitness> best;
  auto cost = [&](const PathWitness& w) -> Weight {
    return g.weighted() ? *w.weight : static_cast<Weight>(w.length());
  };
  g.require_terminals();
  // Unweighted: every shortest path has dist(s,t)+1 vertices, so the
  // enumeration depth can be capped by a plain BFS distance.
  std::size_t max_len = g.n();
  if (!g.weighted()) {
    auto d = bfs_layers(g, g.s())[static_cast<std::size_t>(g.t())];
    if (d == kInfinity) return std::nullopt;
    max_len = static_cast<std::size_t>(d) + 1;
  }
  enumerate_st_paths(
      g, std::max<std::size_t>(max_len, 2),
      [&](const PathWitness& w) {
        if (!best || cost(w) < cost(*best) ||
            (cost(w) == cost(*best) && w.neighbor_count < best->neighbor_count)) {
          best = w;
        }
      },
      budget);
  return best;
}

}  // namespace secluded
