#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "secluded/errors.hpp"
#include "secluded/expression.hpp"
#include "secluded/oracle.hpp"

namespace secluded {

// Index of the unordered label pair {i, j} in a packed upper triangle.
class PairIndex {
 public:
  PairIndex() = default;
  explicit PairIndex(Label r) : r_(r), index_(static_cast<std::size_t>((r + 1) * (r + 1)), 0) {
    std::size_t next = 0;
    for (Label i = 1; i <= r; ++i) {
      for (Label j = i; j <= r; ++j) {
        index_[cell(i, j)] = next;
        index_[cell(j, i)] = next;
        ++next;
      }
    }
    size_ = next;
  }

  [[nodiscard]] Label labels() const { return r_; }
  [[nodiscard]] std::size_t size() const { return size_; }
  [[nodiscard]] std::size_t operator()(Label i, Label j) const { return index_[cell(i, j)]; }

 private:
  [[nodiscard]] std::size_t cell(Label i, Label j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(r_ + 1) + static_cast<std::size_t>(j);
  }

  Label r_ = 0;
  std::size_t size_ = 0;
  std::vector<std::size_t> index_;
};

// Path count vector: p(i, j) = p(j, i) is the number of partial paths with
// endpoint labels i and j.
class PathCounts {
 public:
  PathCounts() = default;
  explicit PathCounts(Label r) : index_(r), cells_(index_.size(), 0) {}

  [[nodiscard]] Label labels() const { return index_.labels(); }
  [[nodiscard]] int get(Label i, Label j) const { return cells_[index_(i, j)]; }
  void set(Label i, Label j, int value) { cells_[index_(i, j)] = value; }
  [[nodiscard]] const std::vector<int>& cells() const { return cells_; }
  [[nodiscard]] int total() const {
    int sum = 0;
    for (auto c : cells_) sum += c;
    return sum;
  }

  friend bool operator==(const PathCounts& a, const PathCounts& b) { return a.cells_ == b.cells_; }
  friend bool operator<(const PathCounts& a, const PathCounts& b) { return a.cells_ < b.cells_; }

 private:
  PairIndex index_;
  std::vector<int> cells_;
};

namespace detail {

// Breadth-first closure of `p` (packed bytes over `idx`) under the
// connecting operations of a join between labels alpha and beta.
inline std::vector<std::string> join_closure(const std::string& p, const PairIndex& idx, Label alpha, Label beta) {
  const auto r = idx.labels();
  std::unordered_set<std::string> seen{p};
  std::vector<std::string> order{p};
  std::deque<std::string> queue{p};
  while (!queue.empty()) {
    auto cur = std::move(queue.front());
    queue.pop_front();
    for (Label a = 1; a <= r; ++a) {
      auto ia = idx(alpha, a);
      if (cur[ia] == 0) continue;
      for (Label b = 1; b <= r; ++b) {
        auto ib = idx(beta, b);
        if (a == beta && b == alpha) {
          if (static_cast<unsigned char>(cur[ia]) < 2) continue;
        } else if (cur[ib] == 0) {
          continue;
        }
        auto next = cur;
        --next[ia];
        --next[ib];
        ++next[idx(a, b)];
        if (seen.insert(next).second) {
          order.push_back(next);
          queue.push_back(std::move(next));
        }
      }
    }
  }
  return order;
}

}  // namespace detail

// Every path count vector reachable from p by a finite sequence of
// connecting operations across a join of alpha and beta, p included.
inline std::set<PathCounts> join_reachable(const PathCounts& p, Label alpha, Label beta) {
  const auto r = p.labels();
  if (alpha == beta) throw InputError("join_reachable: labels must differ");
  if (alpha < 1 || alpha > r || beta < 1 || beta > r) throw InputError("join_reachable: label out of range");
  PairIndex idx(r);
  std::string packed(idx.size(), '\0');
  for (Label i = 1; i <= r; ++i) {
    for (Label j = i; j <= r; ++j) {
      auto v = p.get(i, j);
      if (v < 0 || v > 255) throw InputError("join_reachable: count out of range");
      packed[idx(i, j)] = static_cast<char>(v);
    }
  }
  std::set<PathCounts> out;
  for (const auto& q : detail::join_closure(packed, idx, alpha, beta)) {
    PathCounts pc(r);
    for (Label i = 1; i <= r; ++i) {
      for (Label j = i; j <= r; ++j) pc.set(i, j, static_cast<unsigned char>(q[idx(i, j)]));
    }
    out.insert(std::move(pc));
  }
  return out;
}

// One DP state in readable form.
struct CwState {
  Label labels = 0;
  std::vector<int> x;  // index 1..r
  std::vector<int> y;
  std::vector<int> z;
  PathCounts p;

  [[nodiscard]] int sum_x() const { return sum(x); }
  [[nodiscard]] int sum_y() const { return sum(y); }
  [[nodiscard]] int sum_z() const { return sum(z); }

 private:
  static int sum(const std::vector<int>& v) {
    int total = 0;
    for (auto c : v) total += c;
    return total;
  }
};

struct CwOptions {
  bool prune = true;              // bounds and dead-endpoint pruning
  bool check_invariants = false;  // validate every stored state
  std::uint64_t state_budget = 20'000'000;
};

struct CwStats {
  std::uint64_t states = 0;  // states stored over all nodes
  std::size_t peak = 0;      // largest single table
  std::uint64_t closures = 0;
};

// Decides Secluded k-Path over a k-expression tree. The tree is normalized to
// an irredundant one on construction.
class CwSolver {
 public:
  explicit CwSolver(const ExpressionTree& tree, CwOptions options = {})
      : tree_(make_irredundant(tree)), options_(options), idx_(tree_.labels()) {
    if (tree_.vertex_count() > 255) throw InputError("clique-width DP supports at most 255 vertices");
    r_ = tree_.labels();
    width_ = 3 * static_cast<std::size_t>(r_) + idx_.size();
    compute_liveness();
  }

  [[nodiscard]] const ExpressionTree& tree() const { return tree_; }
  [[nodiscard]] const CwStats& stats() const { return stats_; }

  // Exactly k vertices and exactly l neighbors.
  bool exact(std::size_t k, std::size_t l) {
    check_k(k);
    return run(k, l).exact(k, l);
  }

  // Exactly k vertices and at most l neighbors.
  bool length_exact(std::size_t k, std::size_t l) {
    check_k(k);
    return run(k, l).length_exact(k, l);
  }

  // At most k vertices and at most l neighbors.
  bool at_most(std::size_t k, std::size_t l) {
    check_k(k);
    return run(k, l).at_most(k, l);
  }

  // All realizable (k, l) pairs from one unbounded pass.
  KlTable profile() { return run(tree_.vertex_count(), tree_.vertex_count()); }

  // Realizable pairs with at most kmax vertices and at most lmax neighbors.
  KlTable bounded(std::size_t kmax, std::size_t lmax) { return run(kmax, lmax); }

  [[nodiscard]] CwState decode(const std::string& key) const {
    CwState st;
    st.labels = r_;
    st.x.assign(static_cast<std::size_t>(r_) + 1, 0);
    st.y = st.x;
    st.z = st.x;
    st.p = PathCounts(r_);
    for (Label i = 1; i <= r_; ++i) {
      st.x[static_cast<std::size_t>(i)] = at(key, xi(i));
      st.y[static_cast<std::size_t>(i)] = at(key, yi(i));
      st.z[static_cast<std::size_t>(i)] = at(key, zi(i));
      for (Label j = i; j <= r_; ++j) st.p.set(i, j, at(key, pi(i, j)));
    }
    return st;
  }

  // Root table of the last run, for inspection in tests.
  [[nodiscard]] std::vector<CwState> root_states() const {
    std::vector<CwState> out;
    for (const auto& key : root_) out.push_back(decode(key));
    return out;
  }

 private:
  using Table = std::unordered_set<std::string>;

  static int at(const std::string& key, std::size_t i) { return static_cast<unsigned char>(key[i]); }
  static void add(std::string& key, std::size_t i, int delta) {
    key[i] = static_cast<char>(static_cast<unsigned char>(key[i]) + delta);
  }

  [[nodiscard]] std::size_t xi(Label i) const { return static_cast<std::size_t>(i - 1); }
  [[nodiscard]] std::size_t yi(Label i) const { return static_cast<std::size_t>(r_ + i - 1); }
  [[nodiscard]] std::size_t zi(Label i) const { return static_cast<std::size_t>(2 * r_ + i - 1); }
  [[nodiscard]] std::size_t pi(Label i, Label j) const { return 3 * static_cast<std::size_t>(r_) + idx_(i, j); }

  void check_k(std::size_t k) const {
    if (k < 2) throw InputError("k must be at least 2");
  }

  // live_[node][label]: some join above `node` touches the vertices that
  // carry `label` at `node`.
  void compute_liveness() {
    const auto& nodes = tree_.nodes();
    live_.assign(nodes.size(), std::vector<char>(static_cast<std::size_t>(r_) + 1, 0));
    for (auto id = static_cast<std::int64_t>(nodes.size()) - 1; id >= 0; --id) {
      const auto& nd = nodes[static_cast<std::size_t>(id)];
      const auto& here = live_[static_cast<std::size_t>(id)];
      auto pass = [&](std::int32_t child, std::vector<char> v) { live_[static_cast<std::size_t>(child)] = std::move(v); };
      switch (nd.kind) {
        case ExprKind::Introduce:
          break;
        case ExprKind::Union:
          pass(nd.left, here);
          pass(nd.right, here);
          break;
        case ExprKind::Join: {
          auto v = here;
          v[static_cast<std::size_t>(nd.first)] = 1;
          v[static_cast<std::size_t>(nd.second)] = 1;
          pass(nd.left, std::move(v));
          break;
        }
        case ExprKind::Relabel: {
          auto v = here;
          v[static_cast<std::size_t>(nd.first)] = here[static_cast<std::size_t>(nd.second)];
          pass(nd.left, std::move(v));
          break;
        }
      }
    }
  }

  [[nodiscard]] bool keep(const std::string& key, std::size_t node, std::size_t kmax, std::size_t lmax) const {
    if (!options_.prune) return true;
    std::size_t sx = 0;
    std::size_t sy = 0;
    for (Label i = 1; i <= r_; ++i) {
      sx += static_cast<std::size_t>(at(key, xi(i)));
      sy += static_cast<std::size_t>(at(key, yi(i)));
    }
    if (sx > kmax || sy > lmax) return false;
    const auto& live = live_[node];
    const Label sl = r_ - 1;
    const bool done = at(key, pi(sl, r_)) > 0;
    for (Label i = 1; i <= r_; ++i) {
      for (Label j = i; j <= r_; ++j) {
        if (at(key, pi(i, j)) == 0 || (i == sl && j == r_)) continue;
        // A completed s-t path cannot absorb further partial paths.
        if (done) return false;
        // Ends that must still be extended: non-terminal labels, and both
        // ends of a single-vertex terminal path.
        auto stuck = [&](Label a) { return !live[static_cast<std::size_t>(a)] && (a < sl || i == j); };
        if (stuck(i) || stuck(j)) return false;
      }
    }
    return true;
  }

  void verify(const std::string& key, std::size_t node, std::size_t size) const {
    int total = 0;
    for (Label i = 1; i <= r_; ++i) {
      total += at(key, xi(i)) + at(key, yi(i)) + at(key, zi(i));
      int ends = 0;
      for (Label j = 1; j <= r_; ++j) ends += at(key, pi(i, j));
      if (ends > at(key, xi(i))) {
        throw InternalError("cw state at node " + std::to_string(node) + ": more path ends than path vertices");
      }
    }
    if (total != static_cast<int>(size)) {
      throw InternalError("cw state at node " + std::to_string(node) + ": counts do not sum to |V|");
    }
  }

  void store(Table& table, std::string key, std::size_t node, std::size_t size, std::size_t kmax, std::size_t lmax) {
    if (!keep(key, node, kmax, lmax)) return;
    if (options_.check_invariants) verify(key, node, size);
    if (table.insert(std::move(key)).second) {
      if (++stats_.states > options_.state_budget) throw BudgetError("clique-width DP state budget exceeded");
    }
  }

  KlTable run(std::size_t kmax, std::size_t lmax) {
    const auto& nodes = tree_.nodes();
    const auto n = tree_.vertex_count();
    std::vector<Table> tables(nodes.size());
    std::vector<std::size_t> size(nodes.size(), 0);
    stats_ = {};
    for (std::size_t id = 0; id < nodes.size(); ++id) {
      const auto& nd = nodes[id];
      auto& out = tables[id];
      switch (nd.kind) {
        case ExprKind::Introduce: {
          size[id] = 1;
          std::string on(width_, '\0');
          on[xi(nd.label)] = 1;
          on[pi(nd.label, nd.label)] = 1;
          store(out, std::move(on), id, 1, kmax, lmax);
          if (nd.label < r_ - 1) {
            std::string off(width_, '\0');
            off[zi(nd.label)] = 1;
            store(out, std::move(off), id, 1, kmax, lmax);
          }
          break;
        }
        case ExprKind::Union: {
          auto& a = tables[static_cast<std::size_t>(nd.left)];
          auto& b = tables[static_cast<std::size_t>(nd.right)];
          size[id] = size[static_cast<std::size_t>(nd.left)] + size[static_cast<std::size_t>(nd.right)];
          for (const auto& u : a) {
            for (const auto& v : b) {
              std::string sum(width_, '\0');
              for (std::size_t c = 0; c < width_; ++c) {
                sum[c] = static_cast<char>(static_cast<unsigned char>(u[c]) + static_cast<unsigned char>(v[c]));
              }
              store(out, std::move(sum), id, size[id], kmax, lmax);
            }
          }
          Table().swap(a);
          Table().swap(b);
          break;
        }
        case ExprKind::Relabel: {
          auto& in = tables[static_cast<std::size_t>(nd.left)];
          size[id] = size[static_cast<std::size_t>(nd.left)];
          const auto a = nd.first;
          const auto b = nd.second;
          for (const auto& key : in) {
            auto next = key;
            for (auto f : {&CwSolver::xi, &CwSolver::yi, &CwSolver::zi}) {
              add(next, (this->*f)(b), at(next, (this->*f)(a)));
              next[(this->*f)(a)] = 0;
            }
            add(next, pi(b, b), at(key, pi(a, b)) + at(key, pi(a, a)));
            for (Label j = 1; j <= r_; ++j) {
              if (j != a && j != b) add(next, pi(b, j), at(key, pi(a, j)));
            }
            for (Label j = 1; j <= r_; ++j) next[pi(a, j)] = 0;
            store(out, std::move(next), id, size[id], kmax, lmax);
          }
          Table().swap(in);
          break;
        }
        case ExprKind::Join: {
          auto& in = tables[static_cast<std::size_t>(nd.left)];
          size[id] = size[static_cast<std::size_t>(nd.left)];
          const auto a = nd.first;
          const auto b = nd.second;
          std::unordered_map<std::string, std::vector<std::string>> memo;
          for (const auto& key : in) {
            const bool on_a = at(key, xi(a)) > 0;
            const bool on_b = at(key, xi(b)) > 0;
            auto next = key;
            if (on_a) {
              add(next, yi(b), at(next, zi(b)));
              next[zi(b)] = 0;
            }
            if (on_b) {
              add(next, yi(a), at(next, zi(a)));
              next[zi(a)] = 0;
            }
            if (!(on_a && on_b)) {
              store(out, std::move(next), id, size[id], kmax, lmax);
              continue;
            }
            const auto p_begin = 3 * static_cast<std::size_t>(r_);
            auto p = key.substr(p_begin);
            auto it = memo.find(p);
            if (it == memo.end()) {
              ++stats_.closures;
              it = memo.emplace(p, detail::join_closure(p, idx_, a, b)).first;
            }
            for (const auto& q : it->second) {
              auto merged = next;
              std::copy(q.begin(), q.end(), merged.begin() + static_cast<std::ptrdiff_t>(p_begin));
              store(out, std::move(merged), id, size[id], kmax, lmax);
            }
          }
          Table().swap(in);
          break;
        }
      }
      stats_.peak = std::max(stats_.peak, out.size());
    }

    root_.clear();
    KlTable table(n);
    const Label sl = r_ - 1;
    for (const auto& key : tables[static_cast<std::size_t>(tree_.root())]) {
      if (at(key, xi(sl)) != 1 || at(key, xi(r_)) != 1) continue;
      if (at(key, yi(sl)) != 0 || at(key, yi(r_)) != 0 || at(key, zi(sl)) != 0 || at(key, zi(r_)) != 0) continue;
      if (at(key, pi(sl, r_)) != 1) continue;
      bool clean = true;
      for (Label i = 1; i <= r_ && clean; ++i) {
        for (Label j = i; j <= r_; ++j) {
          if (!(i == sl && j == r_) && at(key, pi(i, j)) != 0) {
            clean = false;
            break;
          }
        }
      }
      if (!clean) continue;
      std::size_t sx = 0;
      std::size_t sy = 0;
      std::size_t sz = 0;
      for (Label i = 1; i <= r_; ++i) {
        sx += static_cast<std::size_t>(at(key, xi(i)));
        sy += static_cast<std::size_t>(at(key, yi(i)));
        sz += static_cast<std::size_t>(at(key, zi(i)));
      }
      if (sx + sy + sz != n) throw InternalError("cw root state does not account for every vertex");
      root_.push_back(key);
      table.set(sx, sy);
    }
    std::sort(root_.begin(), root_.end());
    return table;
  }

  ExpressionTree tree_;
  CwOptions options_;
  PairIndex idx_;
  Label r_ = 0;
  std::size_t width_ = 0;
  std::vector<std::vector<char>> live_;
  std::vector<std::string> root_;
  CwStats stats_;
};

// Exactly k vertices and exactly l neighbors.
inline bool solve_cw(const ExpressionTree& tree, std::size_t k, std::size_t l, CwOptions options = {}) {
  return CwSolver(tree, options).exact(k, l);
}

// At most k vertices and at most l neighbors.
inline bool solve_cw_short(const ExpressionTree& tree, std::size_t k, std::size_t l, CwOptions options = {}) {
  return CwSolver(tree, options).at_most(k, l);
}

}  // namespace secluded
