#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "secluded/errors.hpp"
#include "secluded/graph.hpp"
#include "secluded/oracle.hpp"

namespace secluded {

// L_i = {v : dist(s, v) = i and dist(v, t) = k - i}, k = dist(s, t).
struct Layering {
  std::size_t k = 0;
  std::vector<VertexSet> layers;
  std::vector<int> layer_of;  // -1 for vertices in R
  VertexSet rest;             // R = V \ L
};

inline std::optional<Layering> layering(const Graph& g) {
  g.require_terminals();
  auto ds = bfs_layers(g, g.s());
  auto dt = bfs_layers(g, g.t());
  auto d = ds[static_cast<std::size_t>(g.t())];
  if (d == kInfinity) return std::nullopt;
  Layering out;
  out.k = static_cast<std::size_t>(d);
  out.layers.resize(out.k + 1);
  out.layer_of.assign(g.n(), -1);
  for (std::size_t v = 0; v < g.n(); ++v) {
    if (ds[v] != kInfinity && dt[v] != kInfinity && ds[v] + dt[v] == d) {
      out.layers[static_cast<std::size_t>(ds[v])].push_back(static_cast<Vertex>(v));
      out.layer_of[v] = static_cast<int>(ds[v]);
    } else {
      out.rest.push_back(static_cast<Vertex>(v));
    }
  }
  return out;
}

// Violations of the two layer-locality lemmas: neighbors of L_i inside L lie
// in L_{i-1} or L_{i+1}; an R vertex touching L sees at most two consecutive
// layers.
inline std::vector<std::string> layer_lemma_violations(const Graph& g, const Layering& lay) {
  std::vector<std::string> bad;
  if (lay.layers.front() != VertexSet{g.s()}) bad.push_back("L_0 != {s}");
  if (lay.layers.back() != VertexSet{g.t()}) bad.push_back("L_k != {t}");
  for (std::size_t v = 0; v < g.n(); ++v) {
    auto lv = lay.layer_of[v];
    int lo = std::numeric_limits<int>::max();
    int hi = std::numeric_limits<int>::min();
    for (auto w : g.neighbors(static_cast<Vertex>(v))) {
      auto lw = lay.layer_of[static_cast<std::size_t>(w)];
      if (lw < 0) continue;
      lo = std::min(lo, lw);
      hi = std::max(hi, lw);
      if (lv >= 0 && (lw > lv + 1 || lw < lv - 1)) {
        bad.push_back("edge " + std::to_string(v) + "-" + std::to_string(w) + " joins layers " + std::to_string(lv) +
                      " and " + std::to_string(lw));
      }
    }
    if (lv < 0 && lo <= hi && hi - lo > 1) {
      bad.push_back("R vertex " + std::to_string(v) + " sees layers " + std::to_string(lo) + ".." + std::to_string(hi));
    }
  }
  return bad;
}

namespace detail {

class Bitset {
 public:
  explicit Bitset(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  [[nodiscard]] bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  // |this \ (a ∪ b)|
  [[nodiscard]] std::size_t count_minus(const Bitset& a, const Bitset& b) const {
    std::size_t total = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      total += static_cast<std::size_t>(std::popcount(words_[i] & ~(a.words_[i] | b.words_[i])));
    }
    return total;
  }
  [[nodiscard]] std::size_t count_union(const Bitset& a) const {
    std::size_t total = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      total += static_cast<std::size_t>(std::popcount(words_[i] | a.words_[i]));
    }
    return total;
  }

 private:
  std::vector<std::uint64_t> words_;
};

}  // namespace detail

// DP over layer-crossing edges. value(u, v) is the minimum |N(V(P))| over
// shortest s-v paths P whose last edge is uv.
class ShortestSecludedDp {
 public:
  static constexpr std::int64_t kUnset = -1;

  ShortestSecludedDp(const Graph& g, Layering lay) : g_(g), lay_(std::move(lay)) {
    if (g.weighted()) throw InputError("unweighted shortest secluded path needs an unweighted graph");
    const auto n = g.n();
    nb_.assign(n, detail::Bitset(n));
    for (std::size_t v = 0; v < n; ++v) {
      for (auto w : g.neighbors(static_cast<Vertex>(v))) nb_[v].set(static_cast<std::size_t>(w));
    }
    dp_.assign(n * n, kUnset);
    pred_.assign(n * n, -1);
    if (lay_.k == 0) return;
    const auto s = g.s();
    for (auto u1 : lay_.layers[1]) {
      if (!g.adjacent(s, u1)) continue;
      dp_[cell(s, u1)] = static_cast<std::int64_t>(nb_[static_cast<std::size_t>(s)].count_union(
                             nb_[static_cast<std::size_t>(u1)])) - 2;
    }
    for (std::size_t i = 1; i < lay_.k; ++i) {
      for (auto ui : lay_.layers[i]) {
        for (auto next : lay_.layers[i + 1]) {
          if (!g.adjacent(ui, next)) continue;
          auto& best = dp_[cell(ui, next)];
          for (auto prev : lay_.layers[i - 1]) {
            auto base = dp_[cell(prev, ui)];
            if (base == kUnset) continue;
            auto fresh = nb_[static_cast<std::size_t>(next)].count_minus(nb_[static_cast<std::size_t>(prev)],
                                                                          nb_[static_cast<std::size_t>(ui)]);
            // `next` itself stops being a neighbor once it joins the path.
            auto value = base + static_cast<std::int64_t>(fresh) - 1;
            if (best == kUnset || value < best) {
              best = value;
              pred_[cell(ui, next)] = prev;
            }
          }
        }
      }
    }
  }

  [[nodiscard]] const Layering& layers() const { return lay_; }
  [[nodiscard]] std::int64_t value(Vertex u, Vertex v) const { return dp_[cell(u, v)]; }

  [[nodiscard]] std::optional<PathWitness> best() const {
    const auto t = g_.t();
    if (lay_.k == 0) return std::nullopt;
    Vertex last = -1;
    std::int64_t best = kUnset;
    for (auto u : lay_.layers[lay_.k - 1]) {
      auto v = dp_[cell(u, t)];
      if (v == kUnset) continue;
      if (best == kUnset || v < best) {
        best = v;
        last = u;
      }
    }
    if (last < 0) return std::nullopt;
    std::vector<Vertex> path{t, last};
    Vertex a = last;
    Vertex b = t;
    while (a != g_.s()) {
      auto p = pred_[cell(a, b)];
      path.push_back(static_cast<Vertex>(p));
      b = a;
      a = static_cast<Vertex>(p);
    }
    std::reverse(path.begin(), path.end());
    auto w = make_witness(g_, std::move(path));
    validate_witness(g_, w);
    if (static_cast<std::int64_t>(w.neighbor_count) != best) {
      throw InternalError("shortest secluded DP value " + std::to_string(best) + " differs from witness count " +
                          std::to_string(w.neighbor_count));
    }
    return w;
  }

 private:
  [[nodiscard]] std::size_t cell(Vertex u, Vertex v) const {
    return static_cast<std::size_t>(u) * g_.n() + static_cast<std::size_t>(v);
  }

  Graph g_;
  Layering lay_;
  std::vector<detail::Bitset> nb_;
  std::vector<std::int64_t> dp_;
  std::vector<std::int64_t> pred_;
};

// A shortest s-t path with the fewest neighbors, or none if s and t are
// disconnected.
inline std::optional<PathWitness> shortest_secluded(const Graph& g) {
  if (g.weighted()) throw InputError("unweighted shortest secluded path needs an unweighted graph");
  auto lay = layering(g);
  if (!lay) return std::nullopt;
  return ShortestSecludedDp(g, std::move(*lay)).best();
}

}  // namespace secluded
