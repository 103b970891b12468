#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "secluded/errors.hpp"
#include "secluded/graph.hpp"

namespace secluded {

// Multicolored Clique instance: k independent parts, every vertex of degree r.
struct McInstance {
  Graph graph;
  std::vector<VertexSet> parts;
  std::size_t r = 0;

  [[nodiscard]] std::size_t k() const { return parts.size(); }
};

struct ReducedInstance {
  Graph graph;
  std::size_t threshold = 0;  // rk - C(k,2) + n - k
  Weight d = 0;               // 2k
};

inline void validate_mc(const McInstance& mc) {
  const auto& g = mc.graph;
  if (mc.parts.empty()) throw InputError("multicolored instance needs at least one part");
  std::vector<int> part_of(g.n(), -1);
  for (std::size_t i = 0; i < mc.parts.size(); ++i) {
    if (mc.parts[i].empty()) throw InputError("part " + std::to_string(i + 1) + " is empty");
    for (auto v : mc.parts[i]) {
      g.check_vertex(v);
      if (part_of[static_cast<std::size_t>(v)] >= 0) throw InputError("vertex in two parts");
      part_of[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
  }
  for (std::size_t v = 0; v < g.n(); ++v) {
    if (part_of[v] < 0) throw InputError("vertex " + std::to_string(v) + " in no part");
    if (g.degree(static_cast<Vertex>(v)) != mc.r) {
      throw InputError("vertex " + std::to_string(v) + " has degree " +
                       std::to_string(g.degree(static_cast<Vertex>(v))) + ", expected " + std::to_string(mc.r));
    }
  }
  for (const auto& e : g.edges()) {
    if (part_of[static_cast<std::size_t>(e.u)] == part_of[static_cast<std::size_t>(e.v)]) {
      throw InputError("part " + std::to_string(part_of[static_cast<std::size_t>(e.u)] + 1) + " is not independent");
    }
  }
}

// `p n m`, `e u v` lines, then `part i v1 v2 ...` with parts numbered from 1.
inline void write_mc(std::ostream& out, const McInstance& mc) {
  out << "p " << mc.graph.n() << ' ' << mc.graph.m() << '\n';
  for (const auto& e : mc.graph.edges()) out << "e " << e.u << ' ' << e.v << '\n';
  for (std::size_t i = 0; i < mc.parts.size(); ++i) {
    out << "part " << i + 1;
    for (auto v : mc.parts[i]) out << ' ' << v;
    out << '\n';
  }
}

inline std::string to_text(const McInstance& mc) {
  std::ostringstream out;
  write_mc(out, mc);
  return out.str();
}

inline McInstance parse_mc(std::istream& in) {
  auto text = parse_graph_text(in);
  if (text.weighted) throw InputError("multicolored instance must be unweighted");
  if (text.n < 1) throw InputError("multicolored instance needs vertices");
  McInstance mc;
  auto last = static_cast<Vertex>(text.n - 1);
  mc.graph = Graph(text.n, std::move(text.edges), 0, last);
  std::sort(text.parts.begin(), text.parts.end());
  for (std::size_t i = 0; i < text.parts.size(); ++i) {
    if (text.parts[i].first != i + 1) throw InputError("parts must be numbered 1..k without gaps");
    auto members = text.parts[i].second;
    std::sort(members.begin(), members.end());
    mc.parts.push_back(std::move(members));
  }
  mc.r = mc.graph.n() > 0 ? mc.graph.degree(0) : 0;
  validate_mc(mc);
  return mc;
}

inline McInstance parse_mc(const std::string& text) {
  std::istringstream in(text);
  return parse_mc(in);
}

// Numbering: original vertices 0..n-1, then s, t, then one vertex per edge in
// sorted edge order, then w_1..w_{k-1}.
inline ReducedInstance reduce_mc(const McInstance& mc) {
  validate_mc(mc);
  const auto& g = mc.graph;
  const auto n = g.n();
  const auto k = mc.k();
  const auto s = static_cast<Vertex>(n);
  const auto t = static_cast<Vertex>(n + 1);
  const auto edge_base = static_cast<Vertex>(n + 2);
  const auto w_base = static_cast<Vertex>(n + 2 + g.m());
  const auto total = n + 2 + g.m() + (k - 1);
  std::vector<Edge> edges;
  for (auto v : mc.parts.front()) edges.push_back({s, v, 1});
  for (auto v : mc.parts.back()) edges.push_back({t, v, 1});
  for (std::size_t h = 0; h + 1 < k; ++h) {
    auto w = static_cast<Vertex>(w_base + static_cast<Vertex>(h));
    for (auto v : mc.parts[h]) edges.push_back({w, v, 1});
    for (auto v : mc.parts[h + 1]) edges.push_back({w, v, 1});
  }
  const auto heavy = static_cast<Weight>(k + 1);
  for (std::size_t i = 0; i < g.m(); ++i) {
    const auto& e = g.edges()[i];
    auto ve = static_cast<Vertex>(edge_base + static_cast<Vertex>(i));
    edges.push_back({ve, e.u, heavy});
    edges.push_back({ve, e.v, heavy});
  }
  ReducedInstance out;
  out.graph = Graph(total, std::move(edges), s, t, true);
  out.threshold = mc.r * k + n - k - k * (k - 1) / 2;
  out.d = static_cast<Weight>(2 * k);
  return out;
}

// One vertex per part, pairwise adjacent.
inline bool has_multicolored_clique(const McInstance& mc) {
  std::vector<Vertex> pick;
  auto dfs = [&](auto&& self, std::size_t part) -> bool {
    if (part == mc.parts.size()) return true;
    for (auto v : mc.parts[part]) {
      bool ok = std::all_of(pick.begin(), pick.end(), [&](Vertex u) { return mc.graph.adjacent(u, v); });
      if (!ok) continue;
      pick.push_back(v);
      if (self(self, part + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return dfs(dfs, 0);
}

// ---------------------------------------------------------------------------
// Random families. Sampling uses raw mt19937_64 output so streams are the same
// on every standard library.

namespace detail {

inline std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

inline bool coin(std::mt19937_64& rng, double p) {
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0) < p;
}

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(rng, i)]);
}

inline std::pair<Vertex, Vertex> default_terminals(std::size_t n) {
  return {0, static_cast<Vertex>(n == 0 ? 0 : n - 1)};
}

}  // namespace detail

// G(n, p) with s = 0, t = n - 1.
inline Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  if (n < 1) throw InputError("random graph needs n >= 1");
  if (p < 0.0 || p > 1.0) throw InputError("edge probability must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (detail::coin(rng, p)) edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), 1});
    }
  }
  auto [s, t] = detail::default_terminals(n);
  return Graph(n, std::move(edges), s, t);
}

// Connected graph with exactly m edges: a random spanning tree plus uniformly
// chosen extra edges. s = 0, t = n - 1.
inline Graph random_connected(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 1) throw InputError("random connected graph needs n >= 1");
  if (m + 1 < n || m > n * (n - 1) / 2) throw InputError("edge count impossible for a connected simple graph");
  std::mt19937_64 rng(seed);
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  detail::shuffle(order, rng);
  std::set<std::pair<Vertex, Vertex>> chosen;
  for (std::size_t i = 1; i < n; ++i) {
    auto u = order[i];
    auto v = order[detail::below(rng, i)];
    chosen.insert({std::min(u, v), std::max(u, v)});
  }
  std::vector<std::pair<Vertex, Vertex>> rest;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      std::pair<Vertex, Vertex> e{static_cast<Vertex>(u), static_cast<Vertex>(v)};
      if (!chosen.count(e)) rest.push_back(e);
    }
  }
  detail::shuffle(rest, rng);
  for (std::size_t i = 0; chosen.size() < m; ++i) chosen.insert(rest[i]);
  std::vector<Edge> edges;
  for (const auto& [u, v] : chosen) edges.push_back({u, v, 1});
  auto [s, t] = detail::default_terminals(n);
  return Graph(n, std::move(edges), s, t);
}

// k parts of part_size vertices each (part i holds ids i*part_size ..), every
// vertex of degree r, no edge inside a part. Built by random stub pairing
// followed by double-edge-swap repair; gives up after `attempts` restarts.
inline McInstance random_mc(std::size_t k, std::size_t part_size, std::size_t r, std::uint64_t seed,
                            std::size_t attempts = 200) {
  if (k < 1 || part_size < 1) throw InputError("random_mc needs k >= 1 and part_size >= 1");
  const auto n = k * part_size;
  if (r > (k - 1) * part_size) throw InputError("degree r too large for the multipartite host");
  if ((n * r) % 2 != 0) throw InputError("n * r must be even for an r-regular graph");
  auto part = [&](Vertex v) { return static_cast<std::size_t>(v) / part_size; };
  std::mt19937_64 rng(seed);
  for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
    std::vector<Vertex> stubs;
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t j = 0; j < r; ++j) stubs.push_back(static_cast<Vertex>(v));
    }
    detail::shuffle(stubs, rng);
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) pairs.push_back({stubs[i], stubs[i + 1]});
    std::multiset<std::pair<Vertex, Vertex>> present;
    auto norm = [](Vertex a, Vertex b) { return std::pair(std::min(a, b), std::max(a, b)); };
    for (auto [a, b] : pairs) present.insert(norm(a, b));
    auto bad = [&](std::size_t i) {
      auto [a, b] = pairs[i];
      return a == b || part(a) == part(b) || present.count(norm(a, b)) > 1;
    };
    const std::size_t max_swaps = 2000 * std::max<std::size_t>(pairs.size(), 1);
    for (std::size_t step = 0; step < max_swaps; ++step) {
      std::size_t i = pairs.size();
      for (std::size_t c = 0; c < pairs.size(); ++c) {
        if (bad(c)) {
          i = c;
          break;
        }
      }
      if (i == pairs.size()) break;
      auto j = static_cast<std::size_t>(detail::below(rng, pairs.size()));
      if (j == i) continue;
      auto [a, b] = pairs[i];
      auto [c, d] = pairs[j];
      if (detail::coin(rng, 0.5)) std::swap(c, d);
      auto ok = [&](Vertex x, Vertex y) { return x != y && part(x) != part(y) && present.count(norm(x, y)) == 0; };
      present.erase(present.find(norm(a, b)));
      present.erase(present.find(norm(c, d)));
      if (ok(a, c) && ok(b, d) && norm(a, c) != norm(b, d)) {
        pairs[i] = {a, c};
        pairs[j] = {b, d};
      }
      present.insert(norm(pairs[i].first, pairs[i].second));
      present.insert(norm(pairs[j].first, pairs[j].second));
    }
    bool clean = true;
    for (std::size_t i = 0; i < pairs.size(); ++i) clean = clean && !bad(i);
    if (!clean) continue;
    std::vector<Edge> edges;
    for (auto [a, b] : pairs) edges.push_back({std::min(a, b), std::max(a, b), 1});
    McInstance mc;
    mc.graph = Graph(n, std::move(edges), 0, static_cast<Vertex>(n - 1));
    mc.r = r;
    for (std::size_t i = 0; i < k; ++i) {
      VertexSet members;
      for (std::size_t j = 0; j < part_size; ++j) members.push_back(static_cast<Vertex>(i * part_size + j));
      mc.parts.push_back(std::move(members));
    }
    validate_mc(mc);
    return mc;
  }
  throw InputError("random_mc: no regular multicolored instance found within the retry limit");
}

// ---------------------------------------------------------------------------
// Named families with s = 0 and t = n - 1 unless noted.

inline Graph complete_graph(std::size_t n) {
  if (n < 2) throw InputError("K_n needs n >= 2");
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), 1});
  }
  return Graph(n, std::move(edges), 0, static_cast<Vertex>(n - 1));
}

inline Graph path_graph(std::size_t n) {
  if (n < 2) throw InputError("P_n needs n >= 2");
  std::vector<Edge> edges;
  for (std::size_t v = 0; v + 1 < n; ++v) edges.push_back({static_cast<Vertex>(v), static_cast<Vertex>(v + 1), 1});
  return Graph(n, std::move(edges), 0, static_cast<Vertex>(n - 1));
}

// Cycle 0..n-1 with t opposite s.
inline Graph cycle_graph(std::size_t n) {
  if (n < 3) throw InputError("C_n needs n >= 3");
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < n; ++v) {
    edges.push_back({static_cast<Vertex>(v), static_cast<Vertex>((v + 1) % n), 1});
  }
  return Graph(n, std::move(edges), 0, static_cast<Vertex>(n / 2));
}

// Star with center 0; terminals are the leaves 1 and n-1 (or center and leaf
// for n = 2).
inline Graph star_graph(std::size_t n) {
  if (n < 2) throw InputError("star needs n >= 2");
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < n; ++v) edges.push_back({0, static_cast<Vertex>(v), 1});
  if (n == 2) return Graph(n, std::move(edges), 0, 1);
  return Graph(n, std::move(edges), 1, static_cast<Vertex>(n - 1));
}

// rows x cols grid, row-major ids, s top-left, t bottom-right.
inline Graph grid_graph(std::size_t rows, std::size_t cols) {
  if (rows * cols < 2) throw InputError("grid needs at least two vertices");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      auto v = static_cast<Vertex>(i * cols + j);
      if (j + 1 < cols) edges.push_back({v, v + 1, 1});
      if (i + 1 < rows) edges.push_back({v, static_cast<Vertex>(v + static_cast<Vertex>(cols)), 1});
    }
  }
  return Graph(rows * cols, std::move(edges), 0, static_cast<Vertex>(rows * cols - 1));
}

inline Graph complete_bipartite_graph(std::size_t a, std::size_t b) {
  if (a < 1 || b < 1) throw InputError("K_{a,b} needs both sides non-empty");
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < a; ++u) {
    for (std::size_t v = a; v < a + b; ++v) edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), 1});
  }
  return Graph(a + b, std::move(edges), 0, static_cast<Vertex>(a + b - 1));
}

// The 12-vertex example: path s=0,1,2,3,t=4 with neighbors 5..9 and two
// further vertices 10, 11.
inline Graph figure_one_graph() {
  std::vector<Edge> edges{{0, 1, 1},  {1, 2, 1},  {2, 3, 1},  {3, 4, 1},  {0, 5, 1},
                          {1, 6, 1},  {2, 7, 1},  {3, 8, 1},  {4, 9, 1},  {4, 7, 1},
                          {5, 10, 1}, {7, 10, 1}, {6, 11, 1}, {8, 11, 1}, {8, 9, 1}};
  return Graph(12, std::move(edges), 0, 4);
}

}  // namespace secluded
