#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "secluded/errors.hpp"
#include "secluded/graph.hpp"

namespace secluded {

using Label = std::int32_t;  // 1..r

enum class ExprKind { Introduce, Union, Join, Relabel };

struct ExprNode {
  ExprKind kind = ExprKind::Introduce;
  Vertex vertex = -1;  // Introduce
  Label label = 0;     // Introduce
  Label first = 0;     // Join(first, second) / Relabel(first -> second)
  Label second = 0;
  std::int32_t left = -1;   // only child for Join / Relabel
  std::int32_t right = -1;  // Union
};

// A k-expression tree over labels 1..r. Terminal s is the vertex introduced
// with label r-1, t the one introduced with label r; those two labels never
// appear in a relabel. Nodes are stored in an arena with children before
// parents.
class ExpressionTree {
 public:
  class Builder;

  [[nodiscard]] Label labels() const { return labels_; }
  [[nodiscard]] const std::vector<ExprNode>& nodes() const { return nodes_; }
  [[nodiscard]] const ExprNode& node(std::int32_t id) const { return nodes_[static_cast<std::size_t>(id)]; }
  [[nodiscard]] std::int32_t root() const { return root_; }
  [[nodiscard]] std::size_t vertex_count() const { return vertex_count_; }
  [[nodiscard]] Vertex s() const { return s_; }
  [[nodiscard]] Vertex t() const { return t_; }

  [[nodiscard]] Label s_label() const { return labels_ - 1; }
  [[nodiscard]] Label t_label() const { return labels_; }

  [[nodiscard]] std::size_t count(ExprKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(nodes_.begin(), nodes_.end(), [kind](const ExprNode& n) { return n.kind == kind; }));
  }

 private:
  ExpressionTree(Label labels, std::vector<ExprNode> nodes, std::int32_t root)
      : labels_(labels), nodes_(std::move(nodes)), root_(root) {
    validate();
  }

  void validate() {
    auto fail = [](const std::string& msg) { throw InputError("expression: " + msg); };
    if (labels_ < 2) fail("need at least 2 labels");
    if (root_ < 0 || static_cast<std::size_t>(root_) >= nodes_.size()) fail("missing root");
    auto in_range = [&](Label l) { return l >= 1 && l <= labels_; };
    std::vector<int> parents(nodes_.size(), 0);
    std::vector<Vertex> introduced;
    int s_count = 0;
    int t_count = 0;
    for (std::size_t id = 0; id < nodes_.size(); ++id) {
      const auto& nd = nodes_[id];
      auto child_ok = [&](std::int32_t c) {
        if (c < 0 || static_cast<std::size_t>(c) >= id) fail("child must precede parent");
        ++parents[static_cast<std::size_t>(c)];
      };
      switch (nd.kind) {
        case ExprKind::Introduce:
          if (nd.vertex < 0) fail("negative vertex id");
          if (!in_range(nd.label)) fail("label " + std::to_string(nd.label) + " out of range");
          introduced.push_back(nd.vertex);
          if (nd.label == s_label()) {
            ++s_count;
            s_ = nd.vertex;
          }
          if (nd.label == t_label()) {
            ++t_count;
            t_ = nd.vertex;
          }
          break;
        case ExprKind::Union:
          child_ok(nd.left);
          child_ok(nd.right);
          break;
        case ExprKind::Join:
        case ExprKind::Relabel:
          child_ok(nd.left);
          if (!in_range(nd.first) || !in_range(nd.second)) fail("label out of range");
          if (nd.first == nd.second) fail("join/relabel needs distinct labels");
          if (nd.kind == ExprKind::Relabel &&
              (nd.first >= s_label() || nd.second >= s_label())) {
            fail("relabel touches a terminal label");
          }
          break;
      }
    }
    for (std::size_t id = 0; id < nodes_.size(); ++id) {
      int expected = static_cast<std::int32_t>(id) == root_ ? 0 : 1;
      if (parents[id] != expected) fail("nodes do not form a single rooted tree");
    }
    std::sort(introduced.begin(), introduced.end());
    for (std::size_t i = 0; i < introduced.size(); ++i) {
      if (i > 0 && introduced[i] == introduced[i - 1]) {
        fail("vertex " + std::to_string(introduced[i]) + " introduced twice");
      }
      if (introduced[i] != static_cast<Vertex>(i)) fail("vertex ids must be 0..n-1");
    }
    vertex_count_ = introduced.size();
    if (s_count != 1 || t_count != 1) fail("exactly one vertex each must carry labels r-1 (s) and r (t)");
  }

  Label labels_ = 0;
  std::vector<ExprNode> nodes_;
  std::int32_t root_ = -1;
  std::size_t vertex_count_ = 0;
  Vertex s_ = -1;
  Vertex t_ = -1;
};

class ExpressionTree::Builder {
 public:
  explicit Builder(Label labels) : labels_(labels) {}

  std::int32_t intro(Vertex v, Label label) {
    ExprNode n;
    n.kind = ExprKind::Introduce;
    n.vertex = v;
    n.label = label;
    return push(n);
  }
  std::int32_t unite(std::int32_t a, std::int32_t b) {
    ExprNode n;
    n.kind = ExprKind::Union;
    n.left = a;
    n.right = b;
    return push(n);
  }
  std::int32_t join(Label i, Label j, std::int32_t child) { return unary(ExprKind::Join, i, j, child); }
  std::int32_t relabel(Label from, Label to, std::int32_t child) { return unary(ExprKind::Relabel, from, to, child); }

  ExpressionTree finish(std::int32_t root) { return ExpressionTree(labels_, std::move(nodes_), root); }

 private:
  std::int32_t unary(ExprKind kind, Label i, Label j, std::int32_t child) {
    ExprNode n;
    n.kind = kind;
    n.first = i;
    n.second = j;
    n.left = child;
    return push(n);
  }
  std::int32_t push(const ExprNode& n) {
    nodes_.push_back(n);
    return static_cast<std::int32_t>(nodes_.size() - 1);
  }

  Label labels_;
  std::vector<ExprNode> nodes_;
};

// ---------------------------------------------------------------------------
// Text format:
//   labels <r>
//   (intro <v> <label>) | (union T T) | (join <i> <j> T) | (relabel <i> <j> T)

namespace detail {

class SexprReader {
 public:
  explicit SexprReader(std::string text) : text_(std::move(text)) {}

  void skip_space() {
    while (pos_ < text_.size()) {
      if (text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      throw InputError(std::string("expression syntax: expected '") + c + "' at offset " + std::to_string(pos_));
    }
    ++pos_;
  }

  std::string atom() {
    skip_space();
    auto start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
           text_[pos_] != ')') {
      ++pos_;
    }
    if (start == pos_) throw InputError("expression syntax: expected token at offset " + std::to_string(pos_));
    return text_.substr(start, pos_ - start);
  }

  long long integer() {
    auto tok = atom();
    try {
      std::size_t used = 0;
      auto value = std::stoll(tok, &used);
      if (used != tok.size()) throw InputError("expression syntax: bad integer '" + tok + "'");
      return value;
    } catch (const std::logic_error&) {
      throw InputError("expression syntax: bad integer '" + tok + "'");
    }
  }

 private:
  std::string text_;
  std::size_t pos_ = 0;
};

inline std::int32_t read_node(SexprReader& in, ExpressionTree::Builder& b, int depth) {
  if (depth > 100000) throw InputError("expression nesting too deep");
  in.expect('(');
  auto op = in.atom();
  std::int32_t id = -1;
  if (op == "intro") {
    auto v = in.integer();
    auto l = in.integer();
    id = b.intro(static_cast<Vertex>(v), static_cast<Label>(l));
  } else if (op == "union") {
    auto a = read_node(in, b, depth + 1);
    auto c = read_node(in, b, depth + 1);
    id = b.unite(a, c);
  } else if (op == "join" || op == "relabel") {
    auto i = static_cast<Label>(in.integer());
    auto j = static_cast<Label>(in.integer());
    auto child = read_node(in, b, depth + 1);
    id = op == "join" ? b.join(i, j, child) : b.relabel(i, j, child);
  } else {
    throw InputError("expression syntax: unknown operation '" + op + "'");
  }
  in.expect(')');
  return id;
}

}  // namespace detail

inline ExpressionTree parse_expression(const std::string& text) {
  detail::SexprReader in(text);
  if (in.atom() != "labels") throw InputError("expression: missing 'labels <r>' header");
  auto r = in.integer();
  if (r < 2 || r > 250) throw InputError("expression: label count out of range");
  ExpressionTree::Builder b(static_cast<Label>(r));
  auto root = detail::read_node(in, b, 0);
  if (!in.at_end()) throw InputError("expression syntax: trailing input");
  return b.finish(root);
}

inline ExpressionTree parse_expression(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_expression(buf.str());
}

inline void write_expression(std::ostream& out, const ExpressionTree& tree) {
  out << "labels " << tree.labels() << '\n';
  // Iterative pre-order to survive left-deep trees of any size.
  struct Frame {
    std::int32_t id;
    int stage;
  };
  std::vector<Frame> stack{{tree.root(), 0}};
  while (!stack.empty()) {
    auto& f = stack.back();
    const auto& nd = tree.node(f.id);
    if (f.stage == 0) {
      switch (nd.kind) {
        case ExprKind::Introduce:
          out << "(intro " << nd.vertex << ' ' << nd.label << ')';
          stack.pop_back();
          continue;
        case ExprKind::Union:
          out << "(union ";
          break;
        case ExprKind::Join:
          out << "(join " << nd.first << ' ' << nd.second << ' ';
          break;
        case ExprKind::Relabel:
          out << "(relabel " << nd.first << ' ' << nd.second << ' ';
          break;
      }
      f.stage = 1;
      stack.push_back({nd.left, 0});
    } else if (f.stage == 1 && nd.kind == ExprKind::Union) {
      f.stage = 2;
      out << ' ';
      stack.push_back({nd.right, 0});
    } else {
      out << ')';
      stack.pop_back();
    }
  }
  out << '\n';
}

inline std::string to_text(const ExpressionTree& tree) {
  std::ostringstream out;
  write_expression(out, tree);
  return out.str();
}

// ---------------------------------------------------------------------------

struct LabeledGraph {
  Graph graph;
  std::vector<Label> labels;  // final label per vertex
};

// Evaluates the tree bottom-up with the introduce/union/join/relabel
// semantics. Terminals of the returned graph are the vertices carrying the
// reserved labels.
inline LabeledGraph eval_expression(const ExpressionTree& tree) {
  const auto n = tree.vertex_count();
  std::vector<Label> label(n, 0);
  std::vector<std::vector<Vertex>> members(tree.nodes().size());
  std::vector<char> matrix(n * n, 0);
  std::vector<Edge> edges;
  for (std::size_t id = 0; id < tree.nodes().size(); ++id) {
    const auto& nd = tree.nodes()[id];
    auto& here = members[id];
    switch (nd.kind) {
      case ExprKind::Introduce:
        label[static_cast<std::size_t>(nd.vertex)] = nd.label;
        here.push_back(nd.vertex);
        break;
      case ExprKind::Union:
        here = std::move(members[static_cast<std::size_t>(nd.left)]);
        here.insert(here.end(), members[static_cast<std::size_t>(nd.right)].begin(),
                    members[static_cast<std::size_t>(nd.right)].end());
        members[static_cast<std::size_t>(nd.right)].clear();
        break;
      case ExprKind::Join:
        here = std::move(members[static_cast<std::size_t>(nd.left)]);
        for (auto u : here) {
          if (label[static_cast<std::size_t>(u)] != nd.first) continue;
          for (auto v : here) {
            if (label[static_cast<std::size_t>(v)] != nd.second) continue;
            auto& cell = matrix[static_cast<std::size_t>(u) * n + static_cast<std::size_t>(v)];
            if (cell) continue;
            cell = 1;
            matrix[static_cast<std::size_t>(v) * n + static_cast<std::size_t>(u)] = 1;
            edges.push_back({std::min(u, v), std::max(u, v), 1});
          }
        }
        break;
      case ExprKind::Relabel:
        here = std::move(members[static_cast<std::size_t>(nd.left)]);
        for (auto u : here) {
          if (label[static_cast<std::size_t>(u)] == nd.first) label[static_cast<std::size_t>(u)] = nd.second;
        }
        break;
    }
  }
  return {Graph(n, std::move(edges), tree.s(), tree.t()), std::move(label)};
}

// Equivalent tree in which every edge is added by exactly one join. Joins
// that add no new edge are dropped; a join that would add some but not all
// of its edges cannot be normalized and raises InvariantError.
inline ExpressionTree make_irredundant(const ExpressionTree& tree) {
  const auto n = tree.vertex_count();
  const auto& nodes = tree.nodes();
  std::vector<Label> label(n, 0);
  std::vector<std::vector<Vertex>> members(nodes.size());
  std::vector<char> matrix(n * n, 0);
  std::vector<std::int32_t> remap(nodes.size(), -1);
  ExpressionTree::Builder b(tree.labels());
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    const auto& nd = nodes[id];
    auto& here = members[id];
    switch (nd.kind) {
      case ExprKind::Introduce:
        label[static_cast<std::size_t>(nd.vertex)] = nd.label;
        here.push_back(nd.vertex);
        remap[id] = b.intro(nd.vertex, nd.label);
        break;
      case ExprKind::Union:
        here = std::move(members[static_cast<std::size_t>(nd.left)]);
        here.insert(here.end(), members[static_cast<std::size_t>(nd.right)].begin(),
                    members[static_cast<std::size_t>(nd.right)].end());
        remap[id] = b.unite(remap[static_cast<std::size_t>(nd.left)], remap[static_cast<std::size_t>(nd.right)]);
        break;
      case ExprKind::Join: {
        here = std::move(members[static_cast<std::size_t>(nd.left)]);
        std::size_t pairs = 0;
        std::size_t present = 0;
        for (auto u : here) {
          if (label[static_cast<std::size_t>(u)] != nd.first) continue;
          for (auto v : here) {
            if (label[static_cast<std::size_t>(v)] != nd.second) continue;
            ++pairs;
            present += matrix[static_cast<std::size_t>(u) * n + static_cast<std::size_t>(v)] ? 1 : 0;
          }
        }
        auto child = remap[static_cast<std::size_t>(nd.left)];
        if (pairs == 0 || present == pairs) {
          remap[id] = child;
          break;
        }
        if (present != 0) {
          throw InvariantError("join(" + std::to_string(nd.first) + "," + std::to_string(nd.second) +
                               ") partially overlaps existing edges; cannot normalize");
        }
        for (auto u : here) {
          if (label[static_cast<std::size_t>(u)] != nd.first) continue;
          for (auto v : here) {
            if (label[static_cast<std::size_t>(v)] != nd.second) continue;
            matrix[static_cast<std::size_t>(u) * n + static_cast<std::size_t>(v)] = 1;
            matrix[static_cast<std::size_t>(v) * n + static_cast<std::size_t>(u)] = 1;
          }
        }
        remap[id] = b.join(nd.first, nd.second, child);
        break;
      }
      case ExprKind::Relabel:
        here = std::move(members[static_cast<std::size_t>(nd.left)]);
        for (auto u : here) {
          if (label[static_cast<std::size_t>(u)] == nd.first) label[static_cast<std::size_t>(u)] = nd.second;
        }
        remap[id] = b.relabel(nd.first, nd.second, remap[static_cast<std::size_t>(nd.left)]);
        break;
    }
  }
  return b.finish(remap[static_cast<std::size_t>(tree.root())]);
}

// True if no join node re-adds an existing edge or adds nothing.
inline bool is_irredundant(const ExpressionTree& tree) {
  try {
    return make_irredundant(tree).nodes().size() == tree.nodes().size();
  } catch (const InvariantError&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// Expression builders.

// One label per vertex: non-terminals get labels 1..n-2 in id order, s gets
// n-1 and t gets n. Vertices are added one at a time and joined to their
// earlier neighbors. Once all neighbors of a non-terminal vertex have been
// added it is relabeled into the label of the first such finished vertex, so
// the DP sees finished vertices as one class. Irredundant by construction.
inline ExpressionTree naive_expression(const Graph& g) {
  g.require_terminals();
  const auto n = g.n();
  const auto r = static_cast<Label>(n);
  std::vector<Label> own(n, 0);
  {
    Label next = 1;
    for (std::size_t v = 0; v < n; ++v) {
      auto vv = static_cast<Vertex>(v);
      own[v] = vv == g.s() ? r - 1 : (vv == g.t() ? r : next++);
    }
  }
  std::vector<Vertex> last_neighbor(n, -1);
  for (std::size_t v = 0; v < n; ++v) {
    for (auto w : g.neighbors(static_cast<Vertex>(v))) last_neighbor[v] = std::max(last_neighbor[v], w);
  }
  std::vector<Label> current = own;
  Label sink = 0;
  std::vector<char> retired(n, 0);
  ExpressionTree::Builder b(r);
  std::int32_t root = -1;
  for (std::size_t v = 0; v < n; ++v) {
    auto vv = static_cast<Vertex>(v);
    auto leaf = b.intro(vv, own[v]);
    root = root < 0 ? leaf : b.unite(root, leaf);
    for (auto u : g.neighbors(vv)) {
      if (u < vv) root = b.join(current[static_cast<std::size_t>(u)], own[v], root);
    }
    for (std::size_t u = 0; u <= v; ++u) {
      auto uu = static_cast<Vertex>(u);
      if (retired[u] || uu == g.s() || uu == g.t() || last_neighbor[u] > vv) continue;
      retired[u] = 1;
      if (sink == 0) {
        sink = own[u];
      } else {
        root = b.relabel(own[u], sink, root);
        current[u] = sink;
      }
    }
  }
  return b.finish(root);
}

// Families with a constant number of labels. Vertex ids: s = 0, t = n-1.
enum class Family { Clique, Path, CompleteBipartite, Cograph };

// K_n, n >= 2. Labels: 1 finished, 2 fresh, 3 = s, 4 = t.
inline ExpressionTree clique_expression(std::size_t n) {
  if (n < 2) throw InputError("clique needs n >= 2");
  const auto t = static_cast<Vertex>(n - 1);
  ExpressionTree::Builder b(4);
  std::int32_t inner = -1;
  for (Vertex v = 1; v < t; ++v) {
    if (inner < 0) {
      inner = b.intro(v, 1);
    } else {
      inner = b.relabel(2, 1, b.join(1, 2, b.unite(inner, b.intro(v, 2))));
    }
  }
  std::int32_t root = b.intro(0, 3);
  if (inner >= 0) root = b.join(1, 3, b.unite(inner, root));
  root = b.unite(root, b.intro(t, 4));
  if (inner >= 0) root = b.join(1, 4, root);
  root = b.join(3, 4, root);
  return b.finish(root);
}

// P_n = 0-1-...-(n-1), n >= 2. Labels: 1 current end, 2 fresh, 3 finished,
// 4 = s, 5 = t.
inline ExpressionTree path_expression(std::size_t n) {
  if (n < 2) throw InputError("path needs n >= 2");
  const auto t = static_cast<Vertex>(n - 1);
  ExpressionTree::Builder b(5);
  std::int32_t root = b.intro(0, 4);
  if (n == 2) return b.finish(b.join(4, 5, b.unite(root, b.intro(t, 5))));
  root = b.join(4, 1, b.unite(root, b.intro(1, 1)));
  for (Vertex v = 2; v < t; ++v) {
    root = b.join(1, 2, b.unite(root, b.intro(v, 2)));
    root = b.relabel(2, 1, b.relabel(1, 3, root));
  }
  root = b.join(1, 5, b.unite(root, b.intro(t, 5)));
  return b.finish(root);
}

// K_{a,b}: side A = 0..a-1 (contains s = 0), side B = a..a+b-1 (contains
// t = a+b-1). Labels: 1 = A - s, 2 = B - t, 3 = s, 4 = t.
inline ExpressionTree complete_bipartite_expression(std::size_t a, std::size_t b_size) {
  if (a < 1 || b_size < 1) throw InputError("complete bipartite needs both sides non-empty");
  const auto n = static_cast<Vertex>(a + b_size);
  ExpressionTree::Builder b(4);
  std::int32_t root = b.intro(0, 3);
  for (Vertex v = 1; v < n - 1; ++v) {
    root = b.unite(root, b.intro(v, static_cast<std::size_t>(v) < a ? 1 : 2));
  }
  root = b.unite(root, b.intro(n - 1, 4));
  if (a > 1 && b_size > 1) root = b.join(1, 2, root);
  if (a > 1) root = b.join(1, 4, root);
  if (b_size > 1) root = b.join(3, 2, root);
  root = b.join(3, 4, root);
  return b.finish(root);
}

// Cograph from a formula: `v` is a vertex, `(u F F ...)` a disjoint union,
// `(j F F ...)` a complete join. Leaves are numbered left to right; s is the
// first leaf and t the last. Labels: 1, 2 working, 3 = s, 4 = t.
inline ExpressionTree cograph_expression(const std::string& formula) {
  struct Built {
    std::int32_t node;
    std::size_t plain;  // vertices currently labeled 1
    bool has_s;
    bool has_t;
  };
  std::size_t leaves = 0;
  {
    std::string spaced;
    for (char c : formula) {
      if (c == '(' || c == ')') {
        spaced += ' ';
      } else {
        spaced += c;
      }
    }
    std::istringstream tokens(spaced);
    std::string tok;
    while (tokens >> tok) leaves += tok == "v" ? 1 : 0;
  }
  if (leaves < 2) throw InputError("cograph formula needs at least two vertices");
  detail::SexprReader in(formula);
  ExpressionTree::Builder b(4);
  Vertex next = 0;
  const auto last = static_cast<Vertex>(leaves - 1);

  auto read = [&](auto&& self, int depth) -> Built {
    if (depth > 10000) throw InputError("cograph formula nesting too deep");
    in.skip_space();
    if (in.at_end()) throw InputError("cograph formula: unexpected end");
    // Either a leaf atom or a parenthesized operation.
    std::string tok;
    bool paren = false;
    try {
      in.expect('(');
      paren = true;
    } catch (const InputError&) {
      tok = in.atom();
    }
    if (!paren) {
      if (tok != "v") throw InputError("cograph formula: unknown leaf '" + tok + "'");
      auto v = next++;
      if (v == 0) return {b.intro(v, 3), 0, true, false};
      if (v == last) return {b.intro(v, 4), 0, false, true};
      return {b.intro(v, 1), 1, false, false};
    }
    auto op = in.atom();
    if (op != "u" && op != "j") throw InputError("cograph formula: unknown operation '" + op + "'");
    auto acc = self(self, depth + 1);
    int parts = 1;
    while (true) {
      in.skip_space();
      try {
        in.expect(')');
        break;
      } catch (const InputError&) {
      }
      auto part = self(self, depth + 1);
      ++parts;
      auto right = part.node;
      if (part.plain > 0) right = b.relabel(1, 2, right);
      auto merged = b.unite(acc.node, right);
      if (op == "j") {
        if (acc.plain > 0 && part.plain > 0) merged = b.join(1, 2, merged);
        if (acc.has_s && part.plain > 0) merged = b.join(3, 2, merged);
        if (acc.has_t && part.plain > 0) merged = b.join(4, 2, merged);
        if (part.has_s && acc.plain > 0) merged = b.join(1, 3, merged);
        if (part.has_t && acc.plain > 0) merged = b.join(1, 4, merged);
        if ((acc.has_s && part.has_t) || (acc.has_t && part.has_s)) merged = b.join(3, 4, merged);
      }
      if (part.plain > 0) merged = b.relabel(2, 1, merged);
      acc = {merged, acc.plain + part.plain, acc.has_s || part.has_s, acc.has_t || part.has_t};
    }
    if (parts < 2) throw InputError("cograph formula: operation needs at least two operands");
    return acc;
  };
  auto top = read(read, 0);
  if (!in.at_end()) throw InputError("cograph formula: trailing input");
  return b.finish(top.node);
}

}  // namespace secluded
