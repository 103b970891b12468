#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "secluded/errors.hpp"

namespace secluded {

using Vertex = std::int32_t;
using Weight = std::int64_t;
using VertexSet = std::vector<Vertex>;  // sorted, duplicate free

inline constexpr std::int64_t kInfinity = std::numeric_limits<std::int64_t>::max();

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  Weight w = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Simple undirected graph with designated terminals s and t. Immutable after
// construction. Vertices are the dense ids 0..n-1.
class Graph {
 public:
  Graph() = default;

  Graph(std::size_t n, std::vector<Edge> edges, Vertex s, Vertex t, bool weighted = false)
      : n_(n), s_(s), t_(t), weighted_(weighted), adj_(n), matrix_(n * n, 0) {
    if (n > 0 && (!in_range(s) || !in_range(t))) {
      throw InputError("terminal out of range");
    }
    if (n >= 2 && s == t) {
      throw InputError("terminals s and t must differ");
    }
    for (auto& e : edges) {
      if (!in_range(e.u) || !in_range(e.v)) {
        throw InputError("edge endpoint out of range: " + std::to_string(e.u) + " " + std::to_string(e.v));
      }
      if (e.u == e.v) {
        throw InputError("self-loop at vertex " + std::to_string(e.u));
      }
      if (weighted_ ? e.w < 1 : e.w != 1) {
        throw InputError("edge weight must be a positive integer");
      }
      if (e.u > e.v) std::swap(e.u, e.v);
      auto& cell = matrix_[index(e.u, e.v)];
      if (cell) {
        throw InputError("parallel edge " + std::to_string(e.u) + " " + std::to_string(e.v));
      }
      cell = 1;
      matrix_[index(e.v, e.u)] = 1;
      adj_[e.u].push_back(e.v);
      adj_[e.v].push_back(e.u);
    }
    for (auto& list : adj_) std::sort(list.begin(), list.end());
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
    edges_ = std::move(edges);
  }

  [[nodiscard]] std::size_t n() const { return n_; }
  [[nodiscard]] std::size_t m() const { return edges_.size(); }
  [[nodiscard]] Vertex s() const { return s_; }
  [[nodiscard]] Vertex t() const { return t_; }
  [[nodiscard]] bool weighted() const { return weighted_; }

  [[nodiscard]] bool in_range(Vertex v) const { return v >= 0 && static_cast<std::size_t>(v) < n_; }

  void check_vertex(Vertex v) const {
    if (!in_range(v)) throw InputError("vertex id out of range: " + std::to_string(v));
  }

  // Throws unless the graph is a well-formed s-t instance.
  void require_terminals() const {
    if (n_ < 2 || s_ == t_) throw InputError("instance needs two distinct terminals");
  }

  [[nodiscard]] std::span<const Vertex> neighbors(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
  [[nodiscard]] std::size_t degree(Vertex v) const { return adj_[static_cast<std::size_t>(v)].size(); }

  [[nodiscard]] bool adjacent(Vertex u, Vertex v) const { return matrix_[index(u, v)] != 0; }

  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }

  [[nodiscard]] Weight weight(Vertex u, Vertex v) const {
    if (!weighted_) return adjacent(u, v) ? 1 : 0;
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair(u, v),
                               [](const Edge& e, const std::pair<Vertex, Vertex>& key) {
                                 return std::pair(e.u, e.v) < key;
                               });
    if (it == edges_.end() || it->u != u || it->v != v) return 0;
    return it->w;
  }

  // Same graph with other terminals.
  [[nodiscard]] Graph with_terminals(Vertex s, Vertex t) const { return Graph(n_, edges_, s, t, weighted_); }

  // Induced subgraph on `keep` (sorted). Returns the graph with vertices
  // renumbered in the order of `keep`; terminals mapped when kept, else 0/1.
  [[nodiscard]] Graph induced(const VertexSet& keep) const {
    std::vector<Vertex> local(n_, -1);
    for (std::size_t i = 0; i < keep.size(); ++i) local[static_cast<std::size_t>(keep[i])] = static_cast<Vertex>(i);
    std::vector<Edge> sub;
    for (const auto& e : edges_) {
      auto a = local[static_cast<std::size_t>(e.u)];
      auto b = local[static_cast<std::size_t>(e.v)];
      if (a >= 0 && b >= 0) sub.push_back({a, b, e.w});
    }
    auto ls = local[static_cast<std::size_t>(s_)];
    auto lt = local[static_cast<std::size_t>(t_)];
    if (ls < 0 || lt < 0) {
      ls = 0;
      lt = keep.size() > 1 ? 1 : 0;
    }
    return Graph(keep.size(), std::move(sub), ls, lt, weighted_);
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.s_ == b.s_ && a.t_ == b.t_ && a.weighted_ == b.weighted_ && a.edges_ == b.edges_;
  }

 private:
  [[nodiscard]] std::size_t index(Vertex u, Vertex v) const {
    return static_cast<std::size_t>(u) * n_ + static_cast<std::size_t>(v);
  }

  std::size_t n_ = 0;
  Vertex s_ = 0;
  Vertex t_ = 0;
  bool weighted_ = false;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<char> matrix_;
  std::vector<Edge> edges_;
};

// Open neighborhood N(U) = {v not in U : v adjacent to some u in U}.
inline VertexSet neighborhood(const Graph& g, std::span<const Vertex> u) {
  std::vector<char> in_u(g.n(), 0);
  for (auto v : u) {
    g.check_vertex(v);
    in_u[static_cast<std::size_t>(v)] = 1;
  }
  std::vector<char> hit(g.n(), 0);
  for (auto v : u) {
    for (auto w : g.neighbors(v)) {
      if (!in_u[static_cast<std::size_t>(w)]) hit[static_cast<std::size_t>(w)] = 1;
    }
  }
  VertexSet out;
  for (std::size_t v = 0; v < g.n(); ++v) {
    if (hit[v]) out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

inline std::size_t neighborhood_size(const Graph& g, std::span<const Vertex> u) { return neighborhood(g, u).size(); }

// Hop distances from root; kInfinity for unreachable vertices.
inline std::vector<std::int64_t> bfs_layers(const Graph& g, Vertex root) {
  g.check_vertex(root);
  std::vector<std::int64_t> dist(g.n(), kInfinity);
  std::deque<Vertex> queue{root};
  dist[static_cast<std::size_t>(root)] = 0;
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (auto w : g.neighbors(v)) {
      auto& d = dist[static_cast<std::size_t>(w)];
      if (d == kInfinity) {
        d = dist[static_cast<std::size_t>(v)] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

// True if consecutive vertices are adjacent and no vertex repeats.
inline bool is_simple_path(const Graph& g, std::span<const Vertex> path) {
  std::vector<char> seen(g.n(), 0);
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (!g.in_range(path[i]) || seen[static_cast<std::size_t>(path[i])]) return false;
    seen[static_cast<std::size_t>(path[i])] = 1;
    if (i > 0 && !g.adjacent(path[i - 1], path[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Text format:
//   p <n> <m>
//   e <u> <v>        unweighted edge
//   ew <u> <v> <w>   weighted edge, w >= 1
//   s <u>
//   t <v>
// '#' starts a comment. `part` lines (multicolored instances) are skipped
// here and read by parse_mc_instance.

struct ParsedGraphText {
  std::size_t n = 0;
  std::vector<Edge> edges;
  std::optional<Vertex> s;
  std::optional<Vertex> t;
  bool weighted = false;
  std::vector<std::pair<std::size_t, VertexSet>> parts;
};

namespace detail {

inline std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

template <typename T>
T read_field(std::istringstream& in, std::size_t line_no, const char* what) {
  T value{};
  if (!(in >> value)) {
    throw InputError("line " + std::to_string(line_no) + ": expected " + what);
  }
  return value;
}

}  // namespace detail

inline ParsedGraphText parse_graph_text(std::istream& in) {
  ParsedGraphText out;
  bool have_header = false;
  std::size_t declared_m = 0;
  bool saw_e = false;
  bool saw_ew = false;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::istringstream line(detail::strip_comment(raw));
    std::string tag;
    if (!(line >> tag)) continue;
    if (tag == "p") {
      if (have_header) throw InputError("line " + std::to_string(line_no) + ": duplicate header");
      auto n = detail::read_field<long long>(line, line_no, "vertex count");
      auto m = detail::read_field<long long>(line, line_no, "edge count");
      if (n < 0 || m < 0) throw InputError("line " + std::to_string(line_no) + ": negative count");
      out.n = static_cast<std::size_t>(n);
      declared_m = static_cast<std::size_t>(m);
      have_header = true;
      continue;
    }
    if (!have_header) throw InputError("line " + std::to_string(line_no) + ": directive before 'p' header");
    if (tag == "e" || tag == "ew") {
      Edge e;
      e.u = detail::read_field<Vertex>(line, line_no, "vertex");
      e.v = detail::read_field<Vertex>(line, line_no, "vertex");
      if (tag == "ew") {
        e.w = detail::read_field<Weight>(line, line_no, "weight");
        if (e.w < 1) throw InputError("line " + std::to_string(line_no) + ": weight must be >= 1");
        saw_ew = true;
      } else {
        saw_e = true;
      }
      if (saw_e && saw_ew) throw InputError("line " + std::to_string(line_no) + ": mixing 'e' and 'ew' edges");
      out.edges.push_back(e);
    } else if (tag == "s") {
      out.s = detail::read_field<Vertex>(line, line_no, "vertex");
    } else if (tag == "t") {
      out.t = detail::read_field<Vertex>(line, line_no, "vertex");
    } else if (tag == "part") {
      auto index = detail::read_field<long long>(line, line_no, "part index");
      VertexSet members;
      Vertex v = 0;
      while (line >> v) members.push_back(v);
      if (!line.eof()) throw InputError("line " + std::to_string(line_no) + ": bad part member");
      out.parts.emplace_back(static_cast<std::size_t>(index), std::move(members));
    } else {
      throw InputError("line " + std::to_string(line_no) + ": unknown directive '" + tag + "'");
    }
    std::string extra;
    if (tag != "part" && line >> extra) {
      throw InputError("line " + std::to_string(line_no) + ": trailing token '" + extra + "'");
    }
  }
  if (!have_header) throw InputError("missing 'p' header");
  if (out.edges.size() != declared_m) {
    throw InputError("header declares " + std::to_string(declared_m) + " edges, found " +
                     std::to_string(out.edges.size()));
  }
  out.weighted = saw_ew;
  return out;
}

// Reads an s-t instance; both terminals are required and must differ.
inline Graph parse_graph(std::istream& in) {
  auto text = parse_graph_text(in);
  if (!text.s || !text.t) throw InputError("instance must declare both 's' and 't'");
  if (*text.s == *text.t) throw InputError("terminals s and t must differ");
  return Graph(text.n, std::move(text.edges), *text.s, *text.t, text.weighted);
}

inline Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

inline void write_graph(std::ostream& out, const Graph& g) {
  out << "p " << g.n() << ' ' << g.m() << '\n';
  for (const auto& e : g.edges()) {
    if (g.weighted()) {
      out << "ew " << e.u << ' ' << e.v << ' ' << e.w << '\n';
    } else {
      out << "e " << e.u << ' ' << e.v << '\n';
    }
  }
  if (g.n() >= 2) {
    out << "s " << g.s() << '\n';
    out << "t " << g.t() << '\n';
  }
}

inline std::string to_text(const Graph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

}  // namespace secluded
