#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "secluded/errors.hpp"
#include "secluded/graph.hpp"
#include "secluded/ilp.hpp"
#include "secluded/oracle.hpp"
#include "secluded/twins.hpp"

namespace secluded {

// Twin partition with s and t split off into singleton modules.
struct NdInstance {
  Graph graph;
  TwinPartition partition;
  QuotientGraph quotient;
  std::size_t ms = 0;  // module {s}
  std::size_t mt = 0;  // module {t}

  [[nodiscard]] std::size_t modules() const { return partition.size(); }
};

inline NdInstance prepare(const Graph& g) {
  g.require_terminals();
  auto base = twin_partition(g);
  std::vector<VertexSet> mods;
  for (auto& m : base.modules) {
    VertexSet rest;
    for (auto v : m) {
      if (v == g.s() || v == g.t()) {
        mods.push_back({v});
      } else {
        rest.push_back(v);
      }
    }
    if (!rest.empty()) mods.push_back(std::move(rest));
  }
  std::sort(mods.begin(), mods.end(), [](const VertexSet& a, const VertexSet& b) { return a.front() < b.front(); });
  NdInstance inst;
  inst.graph = g;
  inst.partition.modules = std::move(mods);
  inst.partition.module_of.assign(g.n(), 0);
  for (std::size_t i = 0; i < inst.partition.modules.size(); ++i) {
    const auto& m = inst.partition.modules[i];
    for (auto v : m) inst.partition.module_of[static_cast<std::size_t>(v)] = i;
    bool clique = m.size() < 2 || g.adjacent(m[0], m[1]);
    inst.partition.kinds.push_back(clique ? ModuleKind::Clique : ModuleKind::Independent);
  }
  inst.quotient = quotient(g, inst.partition);
  inst.ms = inst.partition.module_of[static_cast<std::size_t>(g.s())];
  inst.mt = inst.partition.module_of[static_cast<std::size_t>(g.t())];
  return inst;
}

struct IlpArc {
  std::size_t from = 0;
  std::size_t to = 0;
  std::size_t var = 0;
};

// ILP (P) for one module subset.
struct IlpP {
  IlpInstance ilp;
  std::vector<std::size_t> subset;  // sorted module ids
  std::vector<std::size_t> y_var;   // parallel to subset
  std::vector<IlpArc> arcs;
  std::size_t k = 0;
};

// Variables y_i (declared first) and x_ij, x_ji per quotient edge inside the
// subset. Constraints: sum y = k; flow conservation with the source emitting
// and the sink absorbing one unit; module capacity constraints for
// non-terminal modules; one cut constraint per proper non-empty vertex set up
// to complement.
inline IlpP build_ilp(const NdInstance& inst, std::vector<std::size_t> subset, std::size_t k) {
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  for (auto m : subset) {
    if (m >= inst.modules()) throw InputError("module id out of range");
  }
  auto contains = [&](std::size_t m) { return std::binary_search(subset.begin(), subset.end(), m); };
  if (!contains(inst.ms) || !contains(inst.mt)) throw InputError("module subset must contain both terminal modules");
  if (subset.size() > 62) throw InputError("module subset too large");

  IlpP out;
  out.subset = subset;
  out.k = k;
  auto& ilp = out.ilp;
  const auto kk = static_cast<std::int64_t>(k);
  for (auto m : subset) {
    out.y_var.push_back(ilp.add_variable("y" + std::to_string(m), 1,
                                         static_cast<std::int64_t>(inst.partition.modules[m].size())));
  }
  for (std::size_t a = 0; a < subset.size(); ++a) {
    for (std::size_t b = a + 1; b < subset.size(); ++b) {
      auto i = subset[a];
      auto j = subset[b];
      if (!inst.quotient.adjacent(i, j)) continue;
      auto up = std::max<std::int64_t>(kk - 1, 0);
      out.arcs.push_back({i, j, ilp.add_variable("x" + std::to_string(i) + "_" + std::to_string(j), 0, up)});
      out.arcs.push_back({j, i, ilp.add_variable("x" + std::to_string(j) + "_" + std::to_string(i), 0, up)});
    }
  }

  std::vector<LinearTerm> sum_y;
  for (auto v : out.y_var) sum_y.push_back({v, 1});
  ilp.add_constraint(sum_y, Relation::Equal, kk);

  for (std::size_t a = 0; a < subset.size(); ++a) {
    auto m = subset[a];
    std::vector<LinearTerm> outflow;
    std::vector<LinearTerm> inflow;
    std::vector<LinearTerm> balance;
    for (const auto& arc : out.arcs) {
      if (arc.from == m) {
        outflow.push_back({arc.var, 1});
        balance.push_back({arc.var, 1});
      }
      if (arc.to == m) {
        inflow.push_back({arc.var, 1});
        balance.push_back({arc.var, -1});
      }
    }
    if (m == inst.ms) {
      ilp.add_constraint(outflow, Relation::Equal, 1);
      ilp.add_constraint(inflow, Relation::Equal, 0);
      continue;
    }
    if (m == inst.mt) {
      ilp.add_constraint(inflow, Relation::Equal, 1);
      ilp.add_constraint(outflow, Relation::Equal, 0);
      continue;
    }
    ilp.add_constraint(balance, Relation::Equal, 0);
    auto with_y = outflow;
    with_y.push_back({out.y_var[a], -1});
    if (inst.partition.kinds[m] == ModuleKind::Independent) {
      ilp.add_constraint(with_y, Relation::Equal, 0);
    } else {
      ilp.add_constraint(outflow, Relation::GreaterEqual, 1);
      ilp.add_constraint(with_y, Relation::LessEqual, 0);
    }
  }

  // Cuts: sets containing subset[0], excluding the full set.
  const auto size = subset.size();
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << size); mask += 2) {
    std::vector<LinearTerm> crossing;
    for (const auto& arc : out.arcs) {
      auto ia = static_cast<std::size_t>(std::lower_bound(subset.begin(), subset.end(), arc.from) - subset.begin());
      auto ib = static_cast<std::size_t>(std::lower_bound(subset.begin(), subset.end(), arc.to) - subset.begin());
      if (((mask >> ia) & 1U) != ((mask >> ib) & 1U)) crossing.push_back({arc.var, 1});
    }
    ilp.add_constraint(crossing, Relation::GreaterEqual, 1);
  }
  return out;
}

// Turns a feasible assignment of ILP (P) into an explicit s-t path: an Euler
// trail from M_s to M_t over the x arcs, then the chosen vertices of each
// module (lowest ids) split into one sub-path per visit.
inline PathWitness reconstruct_path(const NdInstance& inst, const IlpP& p, const std::vector<std::int64_t>& value) {
  if (!p.ilp.satisfied(value)) throw InternalError("reconstruct_path: assignment is not feasible");
  const auto r = inst.modules();
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> out_arcs(r);
  std::int64_t arc_total = 0;
  for (const auto& arc : p.arcs) {
    auto c = value[arc.var];
    if (c > 0) out_arcs[arc.from].push_back({arc.to, c});
    arc_total += c;
  }
  for (auto& list : out_arcs) std::sort(list.begin(), list.end());

  // Hierholzer, lowest target first.
  std::vector<std::size_t> cursor(r, 0);
  std::vector<std::size_t> stack{inst.ms};
  std::vector<std::size_t> trail;
  while (!stack.empty()) {
    auto v = stack.back();
    auto& list = out_arcs[v];
    while (cursor[v] < list.size() && list[cursor[v]].second == 0) ++cursor[v];
    if (cursor[v] == list.size()) {
      trail.push_back(v);
      stack.pop_back();
    } else {
      --list[cursor[v]].second;
      stack.push_back(list[cursor[v]].first);
    }
  }
  std::reverse(trail.begin(), trail.end());
  if (static_cast<std::int64_t>(trail.size()) != arc_total + 1 || trail.back() != inst.mt) {
    throw InternalError("reconstruct_path: arcs do not form an Euler trail from M_s to M_t");
  }

  std::map<std::size_t, std::int64_t> chosen;
  for (std::size_t a = 0; a < p.subset.size(); ++a) chosen[p.subset[a]] = value[p.y_var[a]];
  std::map<std::size_t, std::int64_t> visits;
  for (auto m : trail) ++visits[m];
  std::map<std::size_t, std::int64_t> seen;
  std::map<std::size_t, std::size_t> next_vertex;
  std::vector<Vertex> path;
  for (auto m : trail) {
    auto y = chosen.at(m);
    auto n_i = visits[m];
    if (n_i > y) throw InternalError("reconstruct_path: more visits than chosen vertices");
    if (inst.partition.kinds[m] == ModuleKind::Independent && n_i != y) {
      throw InternalError("reconstruct_path: independent module visit count mismatch");
    }
    // The first visit takes the long block, later visits one vertex each.
    auto take = seen[m]++ == 0 ? y - n_i + 1 : 1;
    const auto& mod = inst.partition.modules[m];
    for (std::int64_t i = 0; i < take; ++i) path.push_back(mod[next_vertex[m]++]);
  }
  for (auto m : p.subset) {
    if (visits[m] == 0) throw InternalError("reconstruct_path: module not visited");
  }
  auto w = make_witness(inst.graph, std::move(path));
  validate_witness(inst.graph, w);
  if (w.length() != p.k) throw InternalError("reconstruct_path: wrong path length");
  return w;
}

// Feasible assignment of ILP (P), if any.
inline std::optional<std::vector<std::int64_t>> nd_kpath_assignment(const NdInstance& inst,
                                                                    const std::vector<std::size_t>& subset,
                                                                    std::size_t k, IlpStats* stats = nullptr) {
  if (k < subset.size()) return std::nullopt;
  return feasible(build_ilp(inst, subset, k).ilp, stats);
}

// Some s-t path of exactly k vertices inside the union of `subset` visits
// every module of it.
inline bool nd_kpath(const NdInstance& inst, const std::vector<std::size_t>& subset, std::size_t k) {
  return nd_kpath_assignment(inst, subset, k).has_value();
}

struct NdOptions {
  std::size_t max_modules = 24;
  bool reconstruct = false;  // rebuild and validate a path for every feasible ILP
};

struct NdStats {
  std::uint64_t subsets = 0;  // guesses passing the cheap filters
  std::uint64_t ilp_calls = 0;
  std::uint64_t ilp_nodes = 0;
  std::uint64_t feasible = 0;
  std::uint64_t reconstructions = 0;
};

// Module-guessing solver. ILP results are cached per (subset, k).
class NdSolver {
 public:
  explicit NdSolver(const Graph& g, NdOptions options = {}) : inst_(prepare(g)), options_(options) {
    if (inst_.modules() > options_.max_modules) {
      throw BudgetError("neighborhood diversity module count " + std::to_string(inst_.modules()) +
                        " exceeds cap " + std::to_string(options_.max_modules));
    }
    enumerate_guesses();
  }

  [[nodiscard]] const NdInstance& instance() const { return inst_; }
  [[nodiscard]] const NdStats& stats() const { return stats_; }

  // A witness with exactly k vertices and at most l neighbors (exactly l when
  // exact_l is set).
  std::optional<PathWitness> find(std::size_t k, std::size_t l, bool exact_l) {
    if (k < 2) throw InputError("k must be at least 2");
    for (const auto& guess : guesses_) {
      if (guess.modules.size() > k || k > guess.vertices) continue;
      auto nb = guess.reach + guess.vertices - k;
      if (exact_l ? nb != l : nb > l) continue;
      if (const auto* value = solve(guess, k)) {
        auto ilp = build_ilp(inst_, guess.modules, k);
        auto w = reconstruct_path(inst_, ilp, *value);
        check_count(w, nb);
        return w;
      }
    }
    return std::nullopt;
  }

  bool exact(std::size_t k, std::size_t l) { return decide(k, l, true); }
  bool length_exact(std::size_t k, std::size_t l) { return decide(k, l, false); }
  bool at_most(std::size_t k, std::size_t l) {
    for (std::size_t kk = 2; kk <= std::min(k, inst_.graph.n()); ++kk) {
      if (length_exact(kk, l)) return true;
    }
    return false;
  }

  KlTable profile() {
    KlTable table(inst_.graph.n());
    for (const auto& guess : guesses_) {
      for (auto k = std::max<std::size_t>(guess.modules.size(), 2); k <= guess.vertices; ++k) {
        if (solve(guess, k)) table.set(k, guess.reach + guess.vertices - k);
      }
    }
    return table;
  }

 private:
  struct Guess {
    std::vector<std::size_t> modules;
    std::size_t vertices = 0;  // |union of M'|
    std::size_t reach = 0;     // |union of N|, modules outside M' adjacent to M'
  };

  void enumerate_guesses() {
    const auto r = inst_.modules();
    std::vector<std::size_t> free;
    for (std::size_t m = 0; m < r; ++m) {
      if (m != inst_.ms && m != inst_.mt) free.push_back(m);
    }
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
      Guess guess;
      guess.modules = {inst_.ms, inst_.mt};
      for (std::size_t b = 0; b < free.size(); ++b) {
        if ((mask >> b) & 1U) guess.modules.push_back(free[b]);
      }
      std::sort(guess.modules.begin(), guess.modules.end());
      if (!connected(guess.modules)) continue;
      std::vector<char> in(r, 0);
      for (auto m : guess.modules) {
        in[m] = 1;
        guess.vertices += inst_.partition.modules[m].size();
      }
      for (std::size_t m = 0; m < r; ++m) {
        if (in[m]) continue;
        for (auto o : guess.modules) {
          if (inst_.quotient.adjacent(m, o)) {
            guess.reach += inst_.partition.modules[m].size();
            break;
          }
        }
      }
      ++stats_.subsets;
      guesses_.push_back(std::move(guess));
    }
  }

  [[nodiscard]] bool connected(const std::vector<std::size_t>& mods) const {
    std::vector<char> in(inst_.modules(), 0);
    for (auto m : mods) in[m] = 1;
    std::vector<char> seen(inst_.modules(), 0);
    std::vector<std::size_t> stack{mods.front()};
    seen[mods.front()] = 1;
    std::size_t count = 0;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      ++count;
      for (auto w : inst_.quotient.adj[v]) {
        if (in[w] && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    return count == mods.size();
  }

  const std::vector<std::int64_t>* solve(const Guess& guess, std::size_t k) {
    auto key = std::make_pair(guess.modules, k);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      ++stats_.ilp_calls;
      IlpStats ilp_stats;
      auto value = nd_kpath_assignment(inst_, guess.modules, k, &ilp_stats);
      stats_.ilp_nodes += ilp_stats.nodes;
      if (value) ++stats_.feasible;
      if (value && options_.reconstruct) {
        auto w = reconstruct_path(inst_, build_ilp(inst_, guess.modules, k), *value);
        check_count(w, guess.reach + guess.vertices - k);
        ++stats_.reconstructions;
      }
      it = cache_.emplace(std::move(key), std::move(value)).first;
    }
    return it->second ? &*it->second : nullptr;
  }

  static void check_count(const PathWitness& w, std::size_t formula) {
    if (w.neighbor_count != formula) {
      throw InternalError("nd neighbor formula gives " + std::to_string(formula) + ", path has " +
                          std::to_string(w.neighbor_count));
    }
  }

  bool decide(std::size_t k, std::size_t l, bool exact_l) {
    if (k < 2) throw InputError("k must be at least 2");
    for (const auto& guess : guesses_) {
      if (guess.modules.size() > k || k > guess.vertices) continue;
      auto nb = guess.reach + guess.vertices - k;
      if (exact_l ? nb != l : nb > l) continue;
      if (solve(guess, k)) return true;
    }
    return false;
  }

  NdInstance inst_;
  NdOptions options_;
  NdStats stats_;
  std::vector<Guess> guesses_;
  std::map<std::pair<std::vector<std::size_t>, std::size_t>, std::optional<std::vector<std::int64_t>>> cache_;
};

// Exactly k vertices, at most l neighbors.
inline bool nd_secluded_kpath(const Graph& g, std::size_t k, std::size_t l, NdOptions options = {}) {
  return NdSolver(g, options).length_exact(k, l);
}

// At most k vertices, at most l neighbors.
inline bool nd_short_secluded(const Graph& g, std::size_t k, std::size_t l, NdOptions options = {}) {
  return NdSolver(g, options).at_most(k, l);
}

}  // namespace secluded
