#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "secluded/errors.hpp"

namespace secluded {

enum class Relation { LessEqual, Equal, GreaterEqual };

struct LinearTerm {
  std::size_t var = 0;
  std::int64_t coef = 0;
};

struct IlpConstraint {
  std::vector<LinearTerm> terms;
  Relation rel = Relation::LessEqual;
  std::int64_t rhs = 0;
};

struct IlpVariable {
  std::string name;
  std::int64_t lower = 0;
  std::int64_t upper = 0;
};

class IlpInstance {
 public:
  std::size_t add_variable(std::string name, std::int64_t lower, std::int64_t upper) {
    if (lower > upper) throw InputError("variable " + name + " has empty domain");
    vars_.push_back({std::move(name), lower, upper});
    return vars_.size() - 1;
  }

  void add_constraint(std::vector<LinearTerm> terms, Relation rel, std::int64_t rhs) {
    for (const auto& t : terms) {
      if (t.var >= vars_.size()) throw InputError("constraint refers to unknown variable");
    }
    cons_.push_back({std::move(terms), rel, rhs});
  }

  [[nodiscard]] const std::vector<IlpVariable>& variables() const { return vars_; }
  [[nodiscard]] const std::vector<IlpConstraint>& constraints() const { return cons_; }

  [[nodiscard]] bool satisfied(const std::vector<std::int64_t>& value) const {
    if (value.size() != vars_.size()) return false;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (value[i] < vars_[i].lower || value[i] > vars_[i].upper) return false;
    }
    for (const auto& c : cons_) {
      std::int64_t lhs = 0;
      for (const auto& t : c.terms) lhs += t.coef * value[t.var];
      switch (c.rel) {
        case Relation::LessEqual:
          if (lhs > c.rhs) return false;
          break;
        case Relation::Equal:
          if (lhs != c.rhs) return false;
          break;
        case Relation::GreaterEqual:
          if (lhs < c.rhs) return false;
          break;
      }
    }
    return true;
  }

  // Bounds first, then one constraint per line as `c1*v1 + c2*v2 <= b`.
  void dump(std::ostream& out) const {
    for (const auto& v : vars_) out << v.lower << " <= " << v.name << " <= " << v.upper << '\n';
    for (const auto& c : cons_) {
      if (c.terms.empty()) out << '0';
      for (std::size_t i = 0; i < c.terms.size(); ++i) {
        const auto& t = c.terms[i];
        if (i == 0) {
          out << t.coef << '*' << vars_[t.var].name;
        } else {
          out << (t.coef < 0 ? " - " : " + ") << (t.coef < 0 ? -t.coef : t.coef) << '*' << vars_[t.var].name;
        }
      }
      out << (c.rel == Relation::LessEqual ? " <= " : c.rel == Relation::Equal ? " = " : " >= ") << c.rhs << '\n';
    }
  }

  [[nodiscard]] std::string dump() const {
    std::ostringstream out;
    dump(out);
    return out.str();
  }

 private:
  std::vector<IlpVariable> vars_;
  std::vector<IlpConstraint> cons_;
};

struct IlpStats {
  std::uint64_t nodes = 0;
  std::uint64_t propagations = 0;
};

namespace detail {

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  auto q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

class IlpSearch {
 public:
  IlpSearch(const IlpInstance& inst, std::uint64_t node_budget, IlpStats* stats)
      : inst_(inst), budget_(node_budget), stats_(stats) {
    // Every constraint as one or two `sum <= b` rows.
    for (const auto& c : inst.constraints()) {
      if (c.rel != Relation::GreaterEqual) rows_.push_back({c.terms, c.rhs});
      if (c.rel != Relation::LessEqual) {
        Row neg{c.terms, -c.rhs};
        for (auto& t : neg.terms) t.coef = -t.coef;
        rows_.push_back(std::move(neg));
      }
    }
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      std::erase_if(rows_[r].terms, [](const LinearTerm& t) { return t.coef == 0; });
    }
    round_cap_ = std::max<std::size_t>(1, rows_.size() * std::max<std::size_t>(1, inst.variables().size()));
  }

  std::optional<std::vector<std::int64_t>> run() {
    std::vector<std::int64_t> lo;
    std::vector<std::int64_t> hi;
    for (const auto& v : inst_.variables()) {
      lo.push_back(v.lower);
      hi.push_back(v.upper);
    }
    if (!propagate(lo, hi)) return std::nullopt;
    if (search(lo, hi)) return solution_;
    return std::nullopt;
  }

 private:
  struct Row {
    std::vector<LinearTerm> terms;
    std::int64_t rhs;
  };

  bool propagate(std::vector<std::int64_t>& lo, std::vector<std::int64_t>& hi) {
    for (std::size_t round = 0; round < round_cap_; ++round) {
      bool changed = false;
      for (const auto& row : rows_) {
        if (stats_) ++stats_->propagations;
        std::int64_t min_sum = 0;
        for (const auto& t : row.terms) min_sum += t.coef > 0 ? t.coef * lo[t.var] : t.coef * hi[t.var];
        if (min_sum > row.rhs) return false;
        for (const auto& t : row.terms) {
          auto own = t.coef > 0 ? t.coef * lo[t.var] : t.coef * hi[t.var];
          auto slack = row.rhs - (min_sum - own);
          if (t.coef > 0) {
            auto bound = floor_div(slack, t.coef);
            if (bound < hi[t.var]) {
              hi[t.var] = bound;
              changed = true;
            }
          } else {
            auto bound = ceil_div(slack, t.coef);
            if (bound > lo[t.var]) {
              lo[t.var] = bound;
              changed = true;
            }
          }
          if (lo[t.var] > hi[t.var]) return false;
          min_sum += (t.coef > 0 ? t.coef * lo[t.var] : t.coef * hi[t.var]) - own;
        }
      }
      if (!changed) break;
    }
    return true;
  }

  bool search(const std::vector<std::int64_t>& lo, const std::vector<std::int64_t>& hi) {
    if (stats_) ++stats_->nodes;
    if (++nodes_ > budget_) throw BudgetError("ILP search node budget exceeded");
    std::size_t pick = lo.size();
    for (std::size_t i = 0; i < lo.size(); ++i) {
      if (lo[i] < hi[i]) {
        pick = i;
        break;
      }
    }
    if (pick == lo.size()) {
      if (!inst_.satisfied(lo)) return false;
      solution_ = lo;
      return true;
    }
    for (auto value = lo[pick]; value <= hi[pick]; ++value) {
      auto l2 = lo;
      auto h2 = hi;
      l2[pick] = h2[pick] = value;
      if (propagate(l2, h2) && search(l2, h2)) return true;
    }
    return false;
  }

  const IlpInstance& inst_;
  std::uint64_t budget_;
  IlpStats* stats_;
  std::uint64_t nodes_ = 0;
  std::vector<Row> rows_;
  std::size_t round_cap_ = 1;
  std::vector<std::int64_t> solution_;
};

}  // namespace detail

inline constexpr std::uint64_t kDefaultIlpNodeBudget = 50'000'000;

// Depth-first search in declaration order, values low to high, with bound
// propagation to a fixpoint before each branch. The returned assignment is
// re-checked against every constraint.
inline std::optional<std::vector<std::int64_t>> feasible(const IlpInstance& inst, IlpStats* stats = nullptr,
                                                         std::uint64_t node_budget = kDefaultIlpNodeBudget) {
  auto result = detail::IlpSearch(inst, node_budget, stats).run();
  if (result && !inst.satisfied(*result)) throw InternalError("ILP search returned an infeasible assignment");
  return result;
}

}  // namespace secluded
