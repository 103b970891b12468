#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "secluded/errors.hpp"
#include "secluded/graph.hpp"

namespace secluded {

enum class ModuleKind { Clique, Independent };

// Partition of V into modules of pairwise twins. Singleton modules are
// reported as cliques.
struct TwinPartition {
  std::vector<VertexSet> modules;
  std::vector<ModuleKind> kinds;
  std::vector<std::size_t> module_of;  // vertex -> module index

  [[nodiscard]] std::size_t size() const { return modules.size(); }
};

// Quotient graph over the modules of a twin partition.
struct QuotientGraph {
  std::size_t nodes = 0;
  std::vector<std::vector<std::size_t>> adj;  // sorted
  std::vector<char> matrix;

  [[nodiscard]] bool adjacent(std::size_t i, std::size_t j) const { return matrix[i * nodes + j] != 0; }

  [[nodiscard]] std::size_t edge_count() const {
    std::size_t total = 0;
    for (const auto& list : adj) total += list.size();
    return total / 2;
  }
};

inline bool are_twins(const Graph& g, Vertex u, Vertex v) {
  if (u == v) return true;
  for (std::size_t w = 0; w < g.n(); ++w) {
    auto x = static_cast<Vertex>(w);
    if (x == u || x == v) continue;
    if (g.adjacent(u, x) != g.adjacent(v, x)) return false;
  }
  return true;
}

inline bool are_true_twins(const Graph& g, Vertex u, Vertex v) {
  return u != v && g.adjacent(u, v) && are_twins(g, u, v);
}

namespace detail {

inline std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

inline TwinPartition partition_from_labels(const Graph& g, const std::vector<std::size_t>& label) {
  // Renumber by smallest contained vertex.
  std::map<std::size_t, std::size_t> renumber;
  TwinPartition out;
  out.module_of.assign(g.n(), 0);
  for (std::size_t v = 0; v < g.n(); ++v) {
    auto [it, inserted] = renumber.try_emplace(label[v], out.modules.size());
    if (inserted) out.modules.emplace_back();
    out.modules[it->second].push_back(static_cast<Vertex>(v));
    out.module_of[v] = it->second;
  }
  for (const auto& mod : out.modules) {
    bool clique = mod.size() < 2 || g.adjacent(mod[0], mod[1]);
    out.kinds.push_back(clique ? ModuleKind::Clique : ModuleKind::Independent);
  }
  return out;
}

}  // namespace detail

// Coarsest twin partition (nd(G) modules). Twins with identical open
// neighborhoods (false twins) or identical closed neighborhoods (true twins)
// are grouped; the twin relation is an equivalence, so the classes are the
// modules. Modules are ordered by their smallest vertex.
inline TwinPartition twin_partition(const Graph& g) {
  const auto n = g.n();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::map<std::vector<Vertex>, Vertex> open_sig;
  std::map<std::vector<Vertex>, Vertex> closed_sig;
  for (std::size_t v = 0; v < n; ++v) {
    auto vv = static_cast<Vertex>(v);
    std::vector<Vertex> open(g.neighbors(vv).begin(), g.neighbors(vv).end());
    auto closed = open;
    closed.insert(std::upper_bound(closed.begin(), closed.end(), vv), vv);
    for (auto* table : {&open_sig, &closed_sig}) {
      const auto& key = table == &open_sig ? open : closed;
      auto [it, inserted] = table->try_emplace(key, vv);
      if (!inserted) {
        auto a = detail::find_root(parent, v);
        auto b = detail::find_root(parent, static_cast<std::size_t>(it->second));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  std::vector<std::size_t> label(n);
  for (std::size_t v = 0; v < n; ++v) label[v] = detail::find_root(parent, v);
  return detail::partition_from_labels(g, label);
}

// Checks that `p` covers V disjointly, each module is a clique or an
// independent set of pairwise twins, and module_of is consistent.
inline void validate_twin_partition(const Graph& g, const TwinPartition& p) {
  if (p.kinds.size() != p.modules.size() || p.module_of.size() != g.n()) {
    throw InvariantError("twin partition: inconsistent sizes");
  }
  std::vector<int> seen(g.n(), 0);
  for (std::size_t i = 0; i < p.modules.size(); ++i) {
    const auto& mod = p.modules[i];
    if (mod.empty()) throw InvariantError("twin partition: empty module");
    for (auto v : mod) {
      g.check_vertex(v);
      if (seen[static_cast<std::size_t>(v)]++) throw InvariantError("twin partition: vertex in two modules");
      if (p.module_of[static_cast<std::size_t>(v)] != i) throw InvariantError("twin partition: bad module_of");
    }
    for (std::size_t a = 0; a < mod.size(); ++a) {
      for (std::size_t b = a + 1; b < mod.size(); ++b) {
        if (!are_twins(g, mod[a], mod[b])) {
          throw InvariantError("twin partition: " + std::to_string(mod[a]) + " and " + std::to_string(mod[b]) +
                               " are not twins");
        }
        bool edge = g.adjacent(mod[a], mod[b]);
        if (edge != (p.kinds[i] == ModuleKind::Clique)) {
          throw InvariantError("twin partition: module " + std::to_string(i) + " kind mismatch");
        }
      }
    }
  }
  for (auto c : seen) {
    if (c == 0) throw InvariantError("twin partition: vertex not covered");
  }
}

// Quotient graph of a twin partition. Throws InvariantError unless p is a twin
// partition and every pair of modules is fully adjacent or fully non-adjacent.
inline QuotientGraph quotient(const Graph& g, const TwinPartition& p) {
  validate_twin_partition(g, p);
  QuotientGraph q;
  q.nodes = p.size();
  q.adj.resize(q.nodes);
  q.matrix.assign(q.nodes * q.nodes, 0);
  for (std::size_t i = 0; i < q.nodes; ++i) {
    for (std::size_t j = i + 1; j < q.nodes; ++j) {
      std::size_t crossing = 0;
      for (auto u : p.modules[i]) {
        for (auto v : p.modules[j]) crossing += g.adjacent(u, v) ? 1 : 0;
      }
      if (crossing == 0) continue;
      if (crossing != p.modules[i].size() * p.modules[j].size()) {
        throw InvariantError("quotient: modules " + std::to_string(i) + " and " + std::to_string(j) +
                             " are partially adjacent");
      }
      q.matrix[i * q.nodes + j] = q.matrix[j * q.nodes + i] = 1;
      q.adj[i].push_back(j);
      q.adj[j].push_back(i);
    }
  }
  return q;
}

}  // namespace secluded
