#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "secluded/secluded.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace secluded;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDisagree = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

struct Caps {
  std::size_t modules = 16;
  std::size_t cover = 8;
  Label labels = 8;
  std::uint64_t budget = kDefaultExpansionBudget;
};

void add_caps(CLI::App* cmd, Caps& caps) {
  cmd->add_option("--max-modules", caps.modules, "neighborhood diversity module cap")->capture_default_str();
  cmd->add_option("--max-cover", caps.cover, "twin cover size cap")->capture_default_str();
  cmd->add_option("--max-labels", caps.labels, "expression label cap")->capture_default_str();
  cmd->add_option("--budget", caps.budget, "path enumeration budget")->capture_default_str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string instance_id(const std::string& path) { return fs::path(path).stem().string(); }

class Stopwatch {
 public:
  [[nodiscard]] std::int64_t micros() const {
    return std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct Query {
  std::size_t k = 0;
  std::size_t l = 0;
  bool exact_k = false;
  bool exact_l = false;
};

bool matches(const Query& q, std::size_t k, std::size_t l) {
  return (q.exact_k ? k == q.k : k <= q.k) && (q.exact_l ? l == q.l : l <= q.l);
}

bool ask(const KlTable& t, const Query& q) {
  for (std::size_t k = 2; k <= std::min(q.k, t.n()); ++k) {
    if (q.exact_k && k != q.k) continue;
    if (q.exact_l ? t.exact(k, q.l) : t.length_exact(k, q.l)) return true;
  }
  return false;
}

struct Outcome {
  bool answer = false;
  std::optional<PathWitness> witness;
  std::size_t param = 0;
  std::uint64_t states = 0;
};

json witness_json(const Graph& g, const PathWitness& w) {
  validate_witness(g, w);
  json out;
  out["path"] = w.vertices;
  out["length"] = w.length();
  out["neighbors"] = w.neighbor_count;
  if (w.weight) out["weight"] = *w.weight;
  return out;
}

Outcome run_oracle(const Graph& g, const Query& q, const Caps& caps) {
  Outcome out;
  out.param = g.n();
  enumerate_st_paths(
      g, std::max<std::size_t>(std::min(q.k, g.n()), 2),
      [&](const PathWitness& w) {
        ++out.states;
        if (!out.witness && matches(q, w.length(), w.neighbor_count)) out.witness = w;
      },
      caps.budget);
  out.answer = out.witness.has_value();
  return out;
}

ExpressionTree load_expression(const std::string& path, const Graph& g) {
  auto tree = path == "naive" ? naive_expression(g) : parse_expression(read_file(path));
  auto lg = eval_expression(tree);
  if (to_text(lg.graph) != to_text(g)) throw InputError("expression does not evaluate to the given graph");
  return tree;
}

Outcome run_cw(const ExpressionTree& tree, const Query& q, const Caps& caps) {
  if (tree.labels() > caps.labels) {
    throw BudgetError("expression uses " + std::to_string(tree.labels()) + " labels, cap is " +
                      std::to_string(caps.labels));
  }
  CwSolver solver(tree);
  Outcome out;
  out.param = static_cast<std::size_t>(tree.labels());
  auto n = tree.vertex_count();
  out.answer = ask(solver.bounded(std::min(q.k, n), std::min(q.l, n)), q);
  out.states = solver.stats().states;
  return out;
}

template <typename Solver>
std::optional<PathWitness> find_any(Solver& solver, const Query& q, std::size_t n) {
  for (std::size_t k = 2; k <= std::min(q.k, n); ++k) {
    if (q.exact_k && k != q.k) continue;
    if (auto w = solver.find(k, q.l, q.exact_l)) return w;
  }
  return std::nullopt;
}

Outcome run_nd(const Graph& g, const Query& q, const Caps& caps) {
  NdSolver solver(g, {caps.modules, false});
  Outcome out;
  out.witness = find_any(solver, q, g.n());
  out.answer = out.witness.has_value();
  out.param = solver.instance().modules();
  out.states = solver.stats().ilp_nodes;
  return out;
}

Outcome run_tc(const Graph& g, const Query& q, const Caps& caps) {
  TcSolver solver(g, {caps.cover});
  Outcome out;
  out.witness = find_any(solver, q, g.n());
  out.answer = out.witness.has_value();
  out.param = solver.stats().cover;
  out.states = solver.stats().states;
  return out;
}

void check_k(std::size_t k) {
  if (k < 2) throw InputError("k must be at least 2");
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
  std::string algo;
  std::string graph;
  std::string expr;
  std::optional<std::size_t> k;
  std::optional<std::size_t> l;
  bool exact_k = false;
  bool exact_l = false;
  bool timing = false;
  Caps caps;
};

int cmd_solve(const SolveArgs& a) {
  Stopwatch clock;
  auto g = parse_graph(read_file(a.graph));
  json rec;
  rec["instance"] = instance_id(a.graph);
  rec["solver"] = a.algo;
  if (a.algo == "shortest" || a.algo == "wshortest") {
    if (a.k || a.l || a.exact_k || a.exact_l) throw InputError(a.algo + " takes no k or l");
    std::optional<PathWitness> w;
    if (a.algo == "shortest") {
      w = shortest_secluded(g);
      rec["param"] = g.n();
      rec["states"] = 0;
    } else {
      WeightedStats stats;
      w = weighted_shortest_secluded(g, a.caps.budget, &stats);
      rec["param"] = w ? w->length() - 1 : 0;
      rec["states"] = stats.expansions;
    }
    rec["answer"] = w.has_value();
    if (w) {
      rec["value"] = w->neighbor_count;
      rec["witness"] = witness_json(g, *w);
    } else {
      rec["value"] = nullptr;
    }
  } else {
    if (!a.k || !a.l) throw InputError(a.algo + " needs --k and --l");
    Query q{*a.k, *a.l, a.exact_k, a.exact_l};
    check_k(q.k);
    Outcome out;
    if (a.algo == "oracle") {
      out = run_oracle(g, q, a.caps);
    } else if (a.algo == "cw") {
      if (a.expr.empty()) throw InputError("cw needs --expr (a file, or 'naive')");
      out = run_cw(load_expression(a.expr, g), q, a.caps);
    } else if (a.algo == "nd") {
      out = run_nd(g, q, a.caps);
    } else {
      out = run_tc(g, q, a.caps);
    }
    rec["k"] = q.k;
    rec["l"] = q.l;
    rec["exact_k"] = q.exact_k;
    rec["exact_l"] = q.exact_l;
    rec["answer"] = out.answer;
    rec["param"] = out.param;
    rec["states"] = out.states;
    if (out.witness) rec["witness"] = witness_json(g, *out.witness);
  }
  if (a.timing) rec["micros"] = clock.micros();
  std::cout << rec.dump() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// crosscheck

struct Check {
  std::string solver;
  std::string status;  // agree, disagree, skipped
  std::string detail;
};

std::string table_diff(const KlTable& want, const KlTable& got) {
  std::ostringstream out;
  int shown = 0;
  for (std::size_t k = 0; k <= want.n(); ++k) {
    for (std::size_t l = 0; l <= want.n(); ++l) {
      if (want.exact(k, l) == got.exact(k, l)) continue;
      if (shown++ < 4) out << (shown > 1 ? " " : "") << "(" << k << "," << l << ")=" << got.exact(k, l);
    }
  }
  return out.str();
}

template <typename Fn>
Check profile_check(const std::string& solver, const KlTable& bf, Fn&& fn) {
  try {
    auto got = fn();
    if (got == bf) return {solver, "agree", ""};
    return {solver, "disagree", table_diff(bf, got)};
  } catch (const BudgetError& e) {
    return {solver, "skipped", e.what()};
  }
}

// Golden answers: `exact|kpath|short <k> <l> <true|false>` or
// `shortest <value|none>`.
std::vector<Check> golden_checks(const std::string& path, const Graph& g, const KlTable& bf) {
  std::vector<Check> out;
  std::istringstream in(read_file(path));
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::istringstream line(detail::strip_comment(raw));
    std::string kind;
    if (!(line >> kind)) continue;
    auto where = fs::path(path).filename().string() + ":" + std::to_string(line_no);
    if (kind == "shortest") {
      std::string value;
      if (!(line >> value)) throw InputError(where + ": expected a value");
      auto w = bf_shortest_secluded(g);
      auto truth = w ? std::to_string(w->neighbor_count) : std::string("none");
      out.push_back({"golden", truth == value ? "agree" : "disagree", where + " oracle " + truth});
      continue;
    }
    std::size_t k = 0;
    std::size_t l = 0;
    std::string answer;
    if (!(line >> k >> l >> answer) || (answer != "true" && answer != "false")) {
      throw InputError(where + ": expected '<kind> <k> <l> <true|false>'");
    }
    bool truth = false;
    if (kind == "exact") {
      truth = bf.exact(k, l);
    } else if (kind == "kpath") {
      truth = bf.length_exact(k, l);
    } else if (kind == "short") {
      truth = bf.at_most(k, l);
    } else {
      throw InputError(where + ": unknown golden kind '" + kind + "'");
    }
    bool claimed = answer == "true";
    out.push_back({"golden", claimed == truth ? "agree" : "disagree",
                   where + " oracle " + (truth ? "true" : "false")});
  }
  return out;
}

std::vector<Check> check_graph(const fs::path& file, const Caps& caps) {
  std::vector<Check> out;
  auto g = parse_graph(read_file(file.string()));
  if (g.weighted()) {
    auto bf = bf_shortest_secluded(g, caps.budget);
    try {
      auto ws = weighted_shortest_secluded(g, caps.budget);
      bool same = bf.has_value() == ws.has_value() &&
                  (!bf || (bf->neighbor_count == ws->neighbor_count && bf->weight == ws->weight));
      out.push_back({"wshortest", same ? "agree" : "disagree", ""});
    } catch (const BudgetError& e) {
      out.push_back({"wshortest", "skipped", e.what()});
    }
    return out;
  }
  KlTable bf;
  try {
    bf = bf_profile(g, caps.budget);
  } catch (const BudgetError& e) {
    out.push_back({"oracle", "skipped", e.what()});
    return out;
  }
  auto expr_file = fs::path(file).replace_extension(".expr");
  if (fs::exists(expr_file)) {
    out.push_back(profile_check("cw", bf, [&] {
      auto tree = load_expression(expr_file.string(), g);
      if (tree.labels() > caps.labels) throw BudgetError("label cap exceeded");
      return CwSolver(tree).profile();
    }));
  }
  out.push_back(profile_check("cw-naive", bf, [&] {
    if (static_cast<Label>(g.n()) > caps.labels) throw BudgetError("label cap exceeded");
    return CwSolver(naive_expression(g)).profile();
  }));
  out.push_back(profile_check("nd", bf, [&] { return NdSolver(g, {caps.modules, true}).profile(); }));
  out.push_back(profile_check("tc", bf, [&] { return TcSolver(g, {caps.cover}).profile(); }));
  auto want = bf_shortest_secluded(g, caps.budget);
  auto got = shortest_secluded(g);
  bool same = want.has_value() == got.has_value() &&
              (!want || (want->neighbor_count == got->neighbor_count && want->length() == got->length()));
  out.push_back({"shortest", same ? "agree" : "disagree", ""});
  if (auto lay = layering(g)) {
    auto bad = layer_lemma_violations(g, *lay);
    out.push_back({"layers", bad.empty() ? "agree" : "disagree", bad.empty() ? "" : bad.front()});
  }
  auto answers = fs::path(file).replace_extension(".answers");
  if (fs::exists(answers)) {
    auto golden = golden_checks(answers.string(), g, bf);
    out.insert(out.end(), golden.begin(), golden.end());
  }
  return out;
}

std::vector<Check> check_mc(const fs::path& file, const Caps& caps) {
  auto mc = parse_mc(read_file(file.string()));
  auto red = reduce_mc(mc);
  try {
    auto w = weighted_shortest_secluded(red.graph, caps.budget);
    bool yes = w && w->neighbor_count <= red.threshold;
    bool clique = has_multicolored_clique(mc);
    return {{"reduction", yes == clique ? "agree" : "disagree",
             std::string("clique ") + (clique ? "true" : "false")}};
  } catch (const BudgetError& e) {
    return {{"reduction", "skipped", e.what()}};
  }
}

int cmd_crosscheck(const std::string& dir, const Caps& caps) {
  if (!fs::is_directory(dir)) throw InputError("corpus directory not found: " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    auto ext = entry.path().extension();
    if (entry.is_regular_file() && (ext == ".graph" || ext == ".mc")) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::size_t checks = 0;
  std::size_t disagreements = 0;
  std::size_t skipped = 0;
  for (const auto& file : files) {
    auto results = file.extension() == ".mc" ? check_mc(file, caps) : check_graph(file, caps);
    for (const auto& c : results) {
      json rec;
      rec["instance"] = file.stem().string();
      rec["solver"] = c.solver;
      rec["status"] = c.status;
      if (!c.detail.empty()) rec["detail"] = c.detail;
      std::cout << rec.dump() << '\n';
      ++checks;
      disagreements += c.status == "disagree" ? 1 : 0;
      skipped += c.status == "skipped" ? 1 : 0;
    }
  }
  if (files.empty()) std::cerr << "warning: corpus " << dir << " has no .graph or .mc files; nothing checked\n";
  json summary;
  summary["instances"] = files.size();
  summary["checks"] = checks;
  summary["skipped"] = skipped;
  summary["disagreements"] = disagreements;
  std::cout << json{{"summary", summary}}.dump() << '\n';
  return disagreements == 0 ? kExitOk : kExitDisagree;
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
  std::string family;
  std::size_t n = 10;
  std::size_t m = 0;
  double p = 0.5;
  std::uint64_t seed = 1;
  std::size_t k = 3;
  std::size_t part_size = 3;
  std::size_t r = 2;
  std::size_t rows = 3;
  std::size_t cols = 3;
  std::size_t a = 2;
  std::size_t b = 3;
  std::string formula;
  std::string graph;
  std::string expr;
  std::string out;
};

std::string generate(const GenArgs& a) {
  const auto& f = a.family;
  if (f == "random") return to_text(random_graph(a.n, a.p, a.seed));
  if (f == "connected") return to_text(random_connected(a.n, a.m, a.seed));
  if (f == "mc") return to_text(random_mc(a.k, a.part_size, a.r, a.seed));
  if (f == "mc-reduction") {
    auto mc = random_mc(a.k, a.part_size, a.r, a.seed);
    auto red = reduce_mc(mc);
    std::ostringstream out;
    out << "# mc-reduction k " << a.k << " part-size " << a.part_size << " r " << a.r << " seed " << a.seed << '\n';
    out << "# threshold " << red.threshold << " d " << red.d << " clique "
        << (has_multicolored_clique(mc) ? "yes" : "no") << '\n';
    out << to_text(red.graph);
    return out.str();
  }
  if (f == "clique") return to_text(complete_graph(a.n));
  if (f == "path") return to_text(path_graph(a.n));
  if (f == "cycle") return to_text(cycle_graph(a.n));
  if (f == "star") return to_text(star_graph(a.n));
  if (f == "grid") return to_text(grid_graph(a.rows, a.cols));
  if (f == "bipartite") return to_text(complete_bipartite_graph(a.a, a.b));
  if (f == "figure1") return to_text(figure_one_graph());
  if (f == "expr-clique") return to_text(clique_expression(a.n));
  if (f == "expr-path") return to_text(path_expression(a.n));
  if (f == "expr-bipartite") return to_text(complete_bipartite_expression(a.a, a.b));
  if (f == "expr-cograph") return to_text(cograph_expression(a.formula));
  if (f == "expr-naive") {
    if (a.graph.empty()) throw InputError("expr-naive needs --graph");
    return to_text(naive_expression(parse_graph(read_file(a.graph))));
  }
  if (f == "expr-eval") {
    if (a.expr.empty()) throw InputError("expr-eval needs --expr");
    return to_text(eval_expression(parse_expression(read_file(a.expr))).graph);
  }
  throw InputError("unknown family '" + f + "'");
}

int cmd_gen(const GenArgs& a) {
  auto text = generate(a);
  if (a.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(a.out);
    if (!out) throw InputError("cannot write " + a.out);
    out << text;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
  std::string family = "random";
  std::vector<std::size_t> sizes{4, 6, 8};
  std::vector<std::string> solvers{"oracle", "cw", "nd", "tc", "shortest"};
  double p = 0.5;
  std::uint64_t seed = 1;
  std::optional<std::size_t> l;
  Caps caps;
};

Graph bench_graph(const BenchArgs& a, std::size_t n) {
  const auto& f = a.family;
  if (f == "random") return random_graph(n, a.p, a.seed + n);
  if (f == "connected") return random_connected(n, std::min(n * (n - 1) / 2, 2 * n), a.seed + n);
  if (f == "clique") return complete_graph(n);
  if (f == "path") return path_graph(n);
  if (f == "cycle") return cycle_graph(n);
  if (f == "star") return star_graph(n);
  if (f == "grid") return grid_graph(2, std::max<std::size_t>(n / 2, 1));
  throw InputError("unknown bench family '" + f + "'");
}

int cmd_bench(const BenchArgs& a) {
  for (const auto& s : a.solvers) {
    if (s != "oracle" && s != "cw" && s != "nd" && s != "tc" && s != "shortest") {
      throw InputError("unknown bench solver '" + s + "'");
    }
  }
  std::cout << "instance,solver,param,k,l,answer,micros,states\n";
  for (auto n : a.sizes) {
    auto g = bench_graph(a, n);
    auto id = a.family + "-" + std::to_string(g.n());
    auto l = a.l.value_or(g.n());
    for (const auto& solver : a.solvers) {
      auto row = [&](const std::string& param, std::size_t k, std::size_t ll, const std::string& answer,
                     std::int64_t micros, std::uint64_t states) {
        std::cout << id << ',' << solver << ',' << param << ',' << k << ',' << ll << ',' << answer << ',' << micros
                  << ',' << states << '\n';
      };
      if (solver == "shortest") {
        Stopwatch clock;
        auto w = shortest_secluded(g);
        auto micros = clock.micros();
        row(std::to_string(g.n()), w ? w->length() : 0, w ? w->neighbor_count : 0, w ? "true" : "false", micros, 0);
        continue;
      }
      for (std::size_t k = 2; k <= g.n(); ++k) {
        Query q{k, l, true, false};
        Stopwatch clock;
        try {
          Outcome out;
          if (solver == "oracle") out = run_oracle(g, q, a.caps);
          if (solver == "cw") out = run_cw(naive_expression(g), q, a.caps);
          if (solver == "nd") out = run_nd(g, q, a.caps);
          if (solver == "tc") out = run_tc(g, q, a.caps);
          row(std::to_string(out.param), k, l, out.answer ? "true" : "false", clock.micros(), out.states);
        } catch (const BudgetError&) {
          row("", k, l, "cap", clock.micros(), 0);
        }
      }
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"secluded path solvers"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "decide one instance");
  s->add_option("--algo", solve.algo, "solver")
      ->required()
      ->check(CLI::IsMember({"oracle", "cw", "nd", "tc", "shortest", "wshortest"}));
  s->add_option("--graph", solve.graph, "graph file")->required();
  s->add_option("--expr", solve.expr, "expression file, or 'naive'");
  s->add_option("--k", solve.k, "path length in vertices");
  s->add_option("--l", solve.l, "neighbor bound");
  s->add_flag("--exact-k", solve.exact_k, "length exactly k");
  s->add_flag("--exact-l", solve.exact_l, "exactly l neighbors");
  s->add_flag("--timing", solve.timing, "add wall time to the report");
  add_caps(s, solve.caps);

  std::string corpus;
  Caps cross_caps;
  auto* c = app.add_subcommand("crosscheck", "compare all solvers with the oracle over a corpus");
  c->add_option("--corpus", corpus, "corpus directory")->required();
  add_caps(c, cross_caps);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "generate an instance");
  g->add_option("--family", gen.family, "family")->required();
  g->add_option("--n", gen.n);
  g->add_option("--m", gen.m);
  g->add_option("--p", gen.p);
  g->add_option("--seed", gen.seed);
  g->add_option("--k", gen.k);
  g->add_option("--part-size", gen.part_size);
  g->add_option("--r", gen.r);
  g->add_option("--rows", gen.rows);
  g->add_option("--cols", gen.cols);
  g->add_option("--a", gen.a);
  g->add_option("--b", gen.b);
  g->add_option("--formula", gen.formula);
  g->add_option("--graph", gen.graph);
  g->add_option("--expr", gen.expr);
  g->add_option("--out", gen.out);

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "timing sweep, CSV on stdout");
  b->add_option("--family", bench.family)->capture_default_str();
  b->add_option("--sizes", bench.sizes)->delimiter(',');
  b->add_option("--solvers", bench.solvers)->delimiter(',');
  b->add_option("--p", bench.p);
  b->add_option("--seed", bench.seed);
  b->add_option("--l", bench.l);
  add_caps(b, bench.caps);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (s->parsed()) return cmd_solve(solve);
    if (c->parsed()) return cmd_crosscheck(corpus, cross_caps);
    if (g->parsed()) return cmd_gen(gen);
    return cmd_bench(bench);
  } catch (const BudgetError& e) {
    std::cerr << "budget: " << e.what() << '\n';
    return kExitBudget;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InvariantError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  }
}
