#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "secluded/errors.hpp"
#include "secluded/graph.hpp"
#include "secluded/twins.hpp"

namespace secluded {

// The cliques of G[V \ X] grouped by their neighborhood inside X.
struct NeighborhoodClasses {
  std::vector<VertexSet> cover_neighbors;       // per class: N(v) ∩ X, shared by all members
  std::vector<VertexSet> members;               // per class: its vertices
  std::vector<std::vector<VertexSet>> cliques;  // per class: cliques, non-increasing size
  std::vector<int> class_of;                    // vertex -> class, -1 for vertices in X

  [[nodiscard]] std::size_t size() const { return members.size(); }
};

struct TwinCoverDecomposition {
  VertexSet cover;                   // X
  std::vector<VertexSet> cliques;    // components of G[V \ X], by size desc then smallest id
  std::vector<std::size_t> class_of_clique;
};

inline bool is_twin_cover(const Graph& g, const VertexSet& x) {
  std::vector<char> in(g.n(), 0);
  for (auto v : x) in[static_cast<std::size_t>(v)] = 1;
  for (const auto& e : g.edges()) {
    if (in[static_cast<std::size_t>(e.u)] || in[static_cast<std::size_t>(e.v)]) continue;
    if (!are_true_twins(g, e.u, e.v)) return false;
  }
  return true;
}

// Connected components of G[V \ X], ordered by size (largest first) then by
// smallest vertex.
inline std::vector<VertexSet> components_outside(const Graph& g, const VertexSet& x) {
  std::vector<char> blocked(g.n(), 0);
  for (auto v : x) blocked[static_cast<std::size_t>(v)] = 1;
  std::vector<char> seen(g.n(), 0);
  std::vector<VertexSet> comps;
  for (std::size_t start = 0; start < g.n(); ++start) {
    if (blocked[start] || seen[start]) continue;
    VertexSet comp;
    std::vector<Vertex> stack{static_cast<Vertex>(start)};
    seen[start] = 1;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (auto w : g.neighbors(v)) {
        auto wi = static_cast<std::size_t>(w);
        if (!blocked[wi] && !seen[wi]) {
          seen[wi] = 1;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  std::stable_sort(comps.begin(), comps.end(), [](const VertexSet& a, const VertexSet& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  return comps;
}

// Partition of V \ X by X-neighborhood. Each component of G[V \ X] must be a
// clique lying in a single class; otherwise X is not a twin cover and an
// InvariantError is raised. Classes are ordered by smallest member.
inline NeighborhoodClasses neighborhood_classes(const Graph& g, const VertexSet& x) {
  std::vector<char> in_x(g.n(), 0);
  for (auto v : x) {
    g.check_vertex(v);
    in_x[static_cast<std::size_t>(v)] = 1;
  }
  NeighborhoodClasses out;
  out.class_of.assign(g.n(), -1);
  std::map<VertexSet, std::size_t> index;
  for (std::size_t v = 0; v < g.n(); ++v) {
    if (in_x[v]) continue;
    VertexSet sig;
    for (auto w : g.neighbors(static_cast<Vertex>(v))) {
      if (in_x[static_cast<std::size_t>(w)]) sig.push_back(w);
    }
    auto [it, inserted] = index.try_emplace(sig, out.members.size());
    if (inserted) {
      out.cover_neighbors.push_back(sig);
      out.members.emplace_back();
      out.cliques.emplace_back();
    }
    out.members[it->second].push_back(static_cast<Vertex>(v));
    out.class_of[v] = static_cast<int>(it->second);
  }
  for (auto& comp : components_outside(g, x)) {
    auto cls = out.class_of[static_cast<std::size_t>(comp.front())];
    for (std::size_t a = 0; a < comp.size(); ++a) {
      if (out.class_of[static_cast<std::size_t>(comp[a])] != cls) {
        throw InvariantError("component of G - X spans two neighborhood classes");
      }
      for (std::size_t b = a + 1; b < comp.size(); ++b) {
        if (!g.adjacent(comp[a], comp[b])) throw InvariantError("component of G - X is not a clique");
      }
    }
    out.cliques[static_cast<std::size_t>(cls)].push_back(std::move(comp));
  }
  return out;
}

namespace detail {

// Branch and bound minimum vertex cover on a residual edge list. Branches on
// the highest-degree remaining vertex v: either v is in the cover or all of
// its remaining neighbors are.
class VertexCoverSearch {
 public:
  VertexCoverSearch(std::size_t n, std::vector<std::pair<Vertex, Vertex>> edges)
      : n_(n), edges_(std::move(edges)), in_cover_(n, 0) {}

  VertexSet solve() {
    best_.clear();
    for (std::size_t v = 0; v < n_; ++v) best_.push_back(static_cast<Vertex>(v));
    if (edges_.empty()) return {};
    current_.clear();
    recurse();
    std::sort(best_.begin(), best_.end());
    return best_;
  }

 private:
  void recurse() {
    if (current_.size() >= best_.size()) return;
    std::vector<std::size_t> deg(n_, 0);
    std::size_t uncovered = 0;
    for (const auto& [u, v] : edges_) {
      if (in_cover_[static_cast<std::size_t>(u)] || in_cover_[static_cast<std::size_t>(v)]) continue;
      ++deg[static_cast<std::size_t>(u)];
      ++deg[static_cast<std::size_t>(v)];
      ++uncovered;
    }
    if (uncovered == 0) {
      best_ = current_;
      return;
    }
    std::size_t pick = 0;
    for (std::size_t v = 1; v < n_; ++v) {
      if (deg[v] > deg[pick]) pick = v;
    }
    // Each cover vertex covers at most deg[pick] uncovered edges.
    if (current_.size() + (uncovered + deg[pick] - 1) / deg[pick] >= best_.size()) return;

    auto vp = static_cast<Vertex>(pick);
    in_cover_[pick] = 1;
    current_.push_back(vp);
    recurse();
    current_.pop_back();
    in_cover_[pick] = 0;

    std::vector<Vertex> added;
    for (const auto& [u, v] : edges_) {
      Vertex other = u == vp ? v : (v == vp ? u : -1);
      if (other < 0 || in_cover_[static_cast<std::size_t>(other)]) continue;
      in_cover_[static_cast<std::size_t>(other)] = 1;
      added.push_back(other);
    }
    current_.insert(current_.end(), added.begin(), added.end());
    recurse();
    current_.resize(current_.size() - added.size());
    for (auto w : added) in_cover_[static_cast<std::size_t>(w)] = 0;
  }

  std::size_t n_;
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::vector<char> in_cover_;
  VertexSet current_;
  VertexSet best_;
};

}  // namespace detail

// Minimum twin cover: a minimum vertex cover of G minus all true-twin edges.
inline VertexSet minimum_twin_cover(const Graph& g) {
  std::vector<std::pair<Vertex, Vertex>> residual;
  for (const auto& e : g.edges()) {
    if (!are_true_twins(g, e.u, e.v)) residual.emplace_back(e.u, e.v);
  }
  return detail::VertexCoverSearch(g.n(), std::move(residual)).solve();
}

inline TwinCoverDecomposition twin_cover(const Graph& g) {
  TwinCoverDecomposition out;
  out.cover = minimum_twin_cover(g);
  auto classes = neighborhood_classes(g, out.cover);
  out.cliques = components_outside(g, out.cover);
  for (const auto& c : out.cliques) {
    out.class_of_clique.push_back(static_cast<std::size_t>(classes.class_of[static_cast<std::size_t>(c.front())]));
  }
  return out;
}

}  // namespace secluded
