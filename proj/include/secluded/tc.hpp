#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "secluded/errors.hpp"
#include "secluded/graph.hpp"
#include "secluded/oracle.hpp"
#include "secluded/twin_cover.hpp"

namespace secluded {

inline constexpr int kDirect = -1;

// Skeleton of a path relative to X = cover + {s, t}: the X vertices in path
// order, and for each consecutive pair either a direct edge (kDirect) or a
// gap through the neighborhood class with the given id. Maximal runs of
// direct steps are the sub-paths P_1..P_d.
struct TcPlan {
  VertexSet x;                  // cover with terminals
  std::vector<Vertex> skeleton;  // X vertices on the path, s first, t last
  std::vector<int> steps;        // size skeleton.size() - 1

  [[nodiscard]] std::size_t gaps() const {
    return static_cast<std::size_t>(std::count_if(steps.begin(), steps.end(), [](int c) { return c != kDirect; }));
  }

  [[nodiscard]] std::vector<std::vector<Vertex>> subpaths() const {
    std::vector<std::vector<Vertex>> out{{skeleton.front()}};
    for (std::size_t i = 0; i < steps.size(); ++i) {
      if (steps[i] != kDirect) out.emplace_back();
      out.back().push_back(skeleton[i + 1]);
    }
    return out;
  }
};

struct TcContext {
  VertexSet cover;
  VertexSet x;
  NeighborhoodClasses classes;
};

inline TcContext tc_context(const Graph& g) {
  g.require_terminals();
  TcContext ctx;
  ctx.cover = minimum_twin_cover(g);
  ctx.x = ctx.cover;
  for (auto v : {g.s(), g.t()}) {
    if (!std::binary_search(ctx.x.begin(), ctx.x.end(), v)) ctx.x.insert(std::upper_bound(ctx.x.begin(), ctx.x.end(), v), v);
  }
  ctx.classes = neighborhood_classes(g, ctx.x);
  return ctx;
}

namespace detail {

inline std::vector<std::size_t> class_gap_counts(const TcPlan& plan, std::size_t classes) {
  std::vector<std::size_t> count(classes, 0);
  for (auto c : plan.steps) {
    if (c != kDirect) ++count[static_cast<std::size_t>(c)];
  }
  return count;
}

// Cliques used by a class with g gaps: the min(g, #cliques) largest ones.
inline std::size_t cliques_used(const NeighborhoodClasses& cls, std::size_t c, std::size_t g) {
  return std::min(g, cls.cliques[c].size());
}

inline std::size_t class_capacity(const NeighborhoodClasses& cls, std::size_t c, std::size_t g) {
  std::size_t cap = 0;
  for (std::size_t i = 0; i < cliques_used(cls, c, g); ++i) cap += cls.cliques[c][i].size();
  return cap;
}

}  // namespace detail

// Checks that the plan's skeleton is consistent with g and the classes:
// distinct X vertices, s first and t last, direct steps are edges, and every
// gap's endpoints lie in the class's X-neighborhood.
inline void validate_plan(const Graph& g, const TcContext& ctx, const TcPlan& plan) {
  if (plan.skeleton.size() < 2 || plan.steps.size() + 1 != plan.skeleton.size()) {
    throw InputError("plan skeleton malformed");
  }
  if (plan.skeleton.front() != g.s() || plan.skeleton.back() != g.t()) throw InputError("plan must run from s to t");
  VertexSet sorted = plan.skeleton;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw InputError("plan repeats a vertex");
  for (auto v : sorted) {
    if (!std::binary_search(ctx.x.begin(), ctx.x.end(), v)) throw InputError("plan skeleton leaves X");
  }
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    auto u = plan.skeleton[i];
    auto v = plan.skeleton[i + 1];
    if (plan.steps[i] == kDirect) {
      if (!g.adjacent(u, v)) throw InputError("plan direct step is not an edge");
      continue;
    }
    auto c = static_cast<std::size_t>(plan.steps[i]);
    if (c >= ctx.classes.size()) throw InputError("plan refers to unknown class");
    const auto& nb = ctx.classes.cover_neighbors[c];
    if (!std::binary_search(nb.begin(), nb.end(), u) || !std::binary_search(nb.begin(), nb.end(), v)) {
      throw InputError("gap endpoints outside the class neighborhood");
    }
  }
  auto counts = detail::class_gap_counts(plan, ctx.classes.size());
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] > ctx.classes.members[c].size()) throw InputError("class used by more gaps than it has vertices");
  }
}

// Feasible path lengths [low, high] for a plan.
inline std::pair<std::size_t, std::size_t> plan_length_range(const TcContext& ctx, const TcPlan& plan) {
  auto counts = detail::class_gap_counts(plan, ctx.classes.size());
  std::size_t low = plan.skeleton.size();
  std::size_t high = plan.skeleton.size();
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] == 0) continue;
    low += counts[c];
    high += detail::class_capacity(ctx.classes, c, counts[c]);
  }
  return {low, high};
}

// |N((V(P) ∩ X) ∪ ∪C)| + |∪C| + |V(P) ∩ X| - k, where C are the cliques the
// plan uses. `chosen` overrides the default largest-clique choice with
// explicit clique indices per class.
inline std::size_t neighbor_count(const Graph& g, const TcContext& ctx, const TcPlan& plan, std::size_t k,
                                  const std::map<std::size_t, std::vector<std::size_t>>* chosen = nullptr) {
  validate_plan(g, ctx, plan);
  auto [low, high] = plan_length_range(ctx, plan);
  if (k < low || k > high) throw InputError("k outside the plan's feasible length range");
  auto counts = detail::class_gap_counts(plan, ctx.classes.size());
  VertexSet core = plan.skeleton;
  std::size_t clique_total = 0;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] == 0) continue;
    std::vector<std::size_t> pick;
    if (chosen && chosen->count(c)) {
      pick = chosen->at(c);
    } else {
      for (std::size_t i = 0; i < detail::cliques_used(ctx.classes, c, counts[c]); ++i) pick.push_back(i);
    }
    for (auto i : pick) {
      const auto& clique = ctx.classes.cliques[c].at(i);
      core.insert(core.end(), clique.begin(), clique.end());
      clique_total += clique.size();
    }
  }
  std::sort(core.begin(), core.end());
  return neighborhood_size(g, core) + clique_total + plan.skeleton.size() - k;
}

// Builds an explicit k-vertex path for the plan. Gap vertices come from the
// largest cliques of each class; each used clique gets at least one gap,
// extra gaps go to the first clique with room, extra vertices to the first
// class and clique with room, lowest ids first.
inline PathWitness materialize(const Graph& g, const TcContext& ctx, const TcPlan& plan, std::size_t k) {
  validate_plan(g, ctx, plan);
  auto [low, high] = plan_length_range(ctx, plan);
  if (k < low || k > high) throw InputError("k outside the plan's feasible length range");
  const auto& cls = ctx.classes;
  auto counts = detail::class_gap_counts(plan, cls.size());
  std::size_t extra = k - low;
  // Per class, per used clique: number of gaps and number of vertices.
  std::vector<std::vector<std::size_t>> gaps_in(cls.size());
  std::vector<std::vector<std::size_t>> verts_in(cls.size());
  for (std::size_t c = 0; c < cls.size(); ++c) {
    if (counts[c] == 0) continue;
    auto used = detail::cliques_used(cls, c, counts[c]);
    gaps_in[c].assign(used, 1);
    for (std::size_t left = counts[c] - used; left > 0; --left) {
      std::size_t q = 0;
      while (gaps_in[c][q] >= cls.cliques[c][q].size()) ++q;
      ++gaps_in[c][q];
    }
    verts_in[c] = gaps_in[c];
  }
  for (std::size_t c = 0; c < cls.size() && extra > 0; ++c) {
    for (std::size_t q = 0; q < verts_in[c].size() && extra > 0; ++q) {
      auto room = cls.cliques[c][q].size() - verts_in[c][q];
      auto add = std::min(room, extra);
      verts_in[c][q] += add;
      extra -= add;
    }
  }
  if (extra != 0) throw InternalError("materialize: capacity accounting failed");

  // Gap chunks per clique: the first gap takes the surplus.
  std::vector<std::vector<std::size_t>> next_gap(cls.size());
  std::vector<std::vector<std::size_t>> next_vertex(cls.size());
  std::vector<std::vector<std::size_t>> gaps_seen(cls.size());
  for (std::size_t c = 0; c < cls.size(); ++c) {
    next_vertex[c].assign(gaps_in[c].size(), 0);
    gaps_seen[c].assign(gaps_in[c].size(), 0);
  }
  std::vector<std::size_t> gap_index(cls.size(), 0);
  std::vector<Vertex> path{plan.skeleton.front()};
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    if (plan.steps[i] != kDirect) {
      auto c = static_cast<std::size_t>(plan.steps[i]);
      // Gap number j of class c goes to the clique whose gap quota it falls in.
      auto j = gap_index[c]++;
      std::size_t q = 0;
      std::size_t acc = gaps_in[c][0];
      while (j >= acc) acc += gaps_in[c][++q];
      auto first = gaps_seen[c][q]++ == 0;
      auto take = first ? verts_in[c][q] - gaps_in[c][q] + 1 : 1;
      const auto& clique = cls.cliques[c][q];
      for (std::size_t v = 0; v < take; ++v) path.push_back(clique[next_vertex[c][q]++]);
    }
    path.push_back(plan.skeleton[i + 1]);
  }
  auto w = make_witness(g, std::move(path));
  validate_witness(g, w);
  if (w.length() != k) throw InternalError("materialize: wrong path length");
  return w;
}

struct TcOptions {
  std::size_t max_cover = 16;
  std::uint64_t state_budget = 20'000'000;
};

struct TcStats {
  std::size_t cover = 0;
  std::uint64_t states = 0;
  std::uint64_t skeletons = 0;  // distinct (X', gap profile) completions
};

// Twin-cover solver. Explores skeletons as states (visited X-set, current X
// vertex, gaps used per class); every state that reaches t is a family of
// plans sharing X' and the per-class gap counts, realizing every k in a
// contiguous range with |N(V(P))| = |N[X'] ∪ ⋃ N_X(Y_used)| - k.
class TcSolver {
 public:
  explicit TcSolver(const Graph& g, TcOptions options = {}) : g_(g), options_(options) {
    ctx_ = tc_context(g_);
    stats_.cover = ctx_.cover.size();
    if (ctx_.cover.size() > options_.max_cover) {
      throw BudgetError("twin cover size " + std::to_string(ctx_.cover.size()) + " exceeds cap " +
                        std::to_string(options_.max_cover));
    }
    if (ctx_.x.size() > 62) throw BudgetError("twin cover too large for bitmask search");
    explore();
  }

  [[nodiscard]] const TcContext& context() const { return ctx_; }
  [[nodiscard]] const TcStats& stats() const { return stats_; }

  [[nodiscard]] const KlTable& profile() const { return table_; }

  bool exact(std::size_t k, std::size_t l) const { return check_k(k), table_.exact(k, l); }
  bool length_exact(std::size_t k, std::size_t l) const { return check_k(k), table_.length_exact(k, l); }
  bool at_most(std::size_t k, std::size_t l) const { return check_k(k), table_.at_most(k, l); }

  // All accepted plans, one per completion.
  [[nodiscard]] std::vector<TcPlan> plans() const {
    std::vector<TcPlan> out;
    for (const auto& done : completions_) out.push_back(rebuild(done.state));
    return out;
  }

  // A witness with exactly k vertices and at most (exactly) l neighbors.
  [[nodiscard]] std::optional<PathWitness> find(std::size_t k, std::size_t l, bool exact_l) const {
    check_k(k);
    for (const auto& done : completions_) {
      if (k < done.low || k > done.high || done.closed < k) continue;
      auto nb = done.closed - k;
      if (exact_l ? nb != l : nb > l) continue;
      auto plan = rebuild(done.state);
      auto w = materialize(g_, ctx_, plan, k);
      if (w.neighbor_count != nb) throw InternalError("tc neighbor count disagrees with materialized path");
      return w;
    }
    return std::nullopt;
  }

 private:
  struct Completion {
    std::string state;
    std::size_t low = 0;
    std::size_t high = 0;
    std::size_t closed = 0;  // |N[X'] ∪ ⋃ N_X(Y_used)|
  };

  struct Pred {
    std::string from;
    int step = kDirect;
  };

  static void check_k(std::size_t k) {
    if (k < 2) throw InputError("k must be at least 2");
  }

  // State layout: 8 bytes mask, 1 byte position in X, then one byte per class.
  [[nodiscard]] std::string encode(std::uint64_t mask, std::size_t pos, const std::vector<std::uint8_t>& gaps) const {
    std::string key(9 + gaps.size(), '\0');
    for (int b = 0; b < 8; ++b) key[static_cast<std::size_t>(b)] = static_cast<char>((mask >> (8 * b)) & 0xFFU);
    key[8] = static_cast<char>(pos);
    for (std::size_t c = 0; c < gaps.size(); ++c) key[9 + c] = static_cast<char>(gaps[c]);
    return key;
  }

  static std::uint64_t mask_of(const std::string& key) {
    std::uint64_t mask = 0;
    for (int b = 0; b < 8; ++b) {
      mask |= static_cast<std::uint64_t>(static_cast<unsigned char>(key[static_cast<std::size_t>(b)])) << (8 * b);
    }
    return mask;
  }

  void explore() {
    const auto& x = ctx_.x;
    const auto& cls = ctx_.classes;
    const auto nx = x.size();
    auto pos_of = [&](Vertex v) {
      return static_cast<std::size_t>(std::lower_bound(x.begin(), x.end(), v) - x.begin());
    };
    const auto ps = pos_of(g_.s());
    const auto pt = pos_of(g_.t());
    // Classes whose X-neighborhood contains both endpoints, per ordered pair.
    std::vector<std::vector<std::vector<std::size_t>>> via(nx, std::vector<std::vector<std::size_t>>(nx));
    for (std::size_t c = 0; c < cls.size(); ++c) {
      const auto& nb = cls.cover_neighbors[c];
      for (auto u : nb) {
        for (auto v : nb) {
          if (u != v) via[pos_of(u)][pos_of(v)].push_back(c);
        }
      }
    }
    table_ = KlTable(g_.n());
    std::vector<std::uint8_t> gaps(cls.size(), 0);
    auto start = encode(std::uint64_t{1} << ps, ps, gaps);
    preds_.emplace(start, Pred{});
    std::vector<std::string> frontier{start};
    while (!frontier.empty()) {
      std::vector<std::string> next;
      for (const auto& key : frontier) {
        auto mask = mask_of(key);
        auto pos = static_cast<std::size_t>(static_cast<unsigned char>(key[8]));
        if (pos == pt) {
          complete(key);
          continue;
        }
        for (std::size_t c = 0; c < cls.size(); ++c) gaps[c] = static_cast<std::uint8_t>(key[9 + c]);
        for (std::size_t q = 0; q < nx; ++q) {
          if ((mask >> q) & 1U) continue;
          auto nmask = mask | (std::uint64_t{1} << q);
          auto push = [&](std::string nk, int step) {
            if (preds_.emplace(nk, Pred{key, step}).second) {
              if (++stats_.states > options_.state_budget) throw BudgetError("twin-cover search state budget exceeded");
              next.push_back(std::move(nk));
            }
          };
          if (g_.adjacent(x[pos], x[q])) push(encode(nmask, q, gaps), kDirect);
          for (auto c : via[pos][q]) {
            if (gaps[c] >= cls.members[c].size()) continue;
            ++gaps[c];
            push(encode(nmask, q, gaps), static_cast<int>(c));
            --gaps[c];
          }
        }
      }
      frontier = std::move(next);
    }
    std::sort(completions_.begin(), completions_.end(),
              [](const Completion& a, const Completion& b) { return a.state < b.state; });
  }

  void complete(const std::string& key) {
    const auto& cls = ctx_.classes;
    // Completions differing only in the final position are all at t, so the
    // (mask, gaps) pair identifies the family.
    auto family = key.substr(0, 8) + key.substr(9);
    if (!families_.emplace(family).second) return;
    ++stats_.skeletons;
    auto mask = mask_of(key);
    VertexSet on;
    for (std::size_t q = 0; q < ctx_.x.size(); ++q) {
      if ((mask >> q) & 1U) on.push_back(ctx_.x[q]);
    }
    std::vector<char> closed(g_.n(), 0);
    for (auto v : on) {
      closed[static_cast<std::size_t>(v)] = 1;
      for (auto w : g_.neighbors(v)) closed[static_cast<std::size_t>(w)] = 1;
    }
    Completion done;
    done.state = key;
    done.low = on.size();
    done.high = on.size();
    for (std::size_t c = 0; c < cls.size(); ++c) {
      auto gc = static_cast<std::size_t>(static_cast<unsigned char>(key[9 + c]));
      if (gc == 0) continue;
      for (auto v : cls.cover_neighbors[c]) closed[static_cast<std::size_t>(v)] = 1;
      done.low += gc;
      done.high += detail::class_capacity(cls, c, gc);
    }
    for (auto c : closed) done.closed += c ? 1 : 0;
    for (auto k = done.low; k <= done.high; ++k) table_.set(k, done.closed - k);
    completions_.push_back(std::move(done));
  }

  [[nodiscard]] TcPlan rebuild(const std::string& key) const {
    TcPlan plan;
    plan.x = ctx_.x;
    std::string cur = key;
    while (true) {
      plan.skeleton.push_back(ctx_.x[static_cast<std::size_t>(static_cast<unsigned char>(cur[8]))]);
      const auto& pred = preds_.at(cur);
      if (pred.from.empty()) break;
      plan.steps.push_back(pred.step);
      cur = pred.from;
    }
    std::reverse(plan.skeleton.begin(), plan.skeleton.end());
    std::reverse(plan.steps.begin(), plan.steps.end());
    return plan;
  }

  Graph g_;
  TcOptions options_;
  TcContext ctx_;
  TcStats stats_;
  KlTable table_;
  std::unordered_map<std::string, Pred> preds_;
  std::unordered_set<std::string> families_;
  std::vector<Completion> completions_;
};

// Exactly k vertices, at most l neighbors.
inline bool tc_secluded_kpath(const Graph& g, std::size_t k, std::size_t l, TcOptions options = {}) {
  return TcSolver(g, options).length_exact(k, l);
}

// At most k vertices, at most l neighbors.
inline bool tc_short_secluded(const Graph& g, std::size_t k, std::size_t l, TcOptions options = {}) {
  return TcSolver(g, options).at_most(k, l);
}

}  // namespace secluded
