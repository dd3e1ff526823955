// fvsk: command-line front end.
//
// Every command prints one report:
//   schema fvsk-report/1
//   command <name>
//   input_digest fnv1a64:<hex>
//   ... command-specific key/value lines ...
//   elapsed_ms <n>
//
// Exit codes: 0 ok, 1 usage or parse error, 2 validation failure,
// 3 oracle cap exceeded, 4 verification mismatch.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fvsk/fvsk.hpp"

namespace {

using namespace fvsk;

enum Exit { kOk = 0, kUsage = 1, kInvalid = 2, kCap = 3, kMismatch = 4 };

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::uint64_t fnv1a(const std::string& bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

class Report {
 public:
  Report(std::string command, const std::vector<std::string>& inputs) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& text : inputs) h = fnv1a(text, h);
    std::ostringstream digest;
    digest << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
    add("schema", "fvsk-report/1");
    add("command", command);
    add("input_digest", digest.str());
  }

  template <typename T>
  void add(const std::string& key, const T& value) {
    std::ostringstream os;
    os << key << ' ' << value;
    lines_.push_back(os.str());
  }

  void ids(const std::string& key, const VertexSet& s) {
    std::ostringstream os;
    os << key;
    for (Vertex v : s) os << ' ' << v;
    lines_.push_back(os.str());
  }

  // Multi-line payload between "<name> begin" and "<name> end".
  void block(const std::string& name, const std::string& body) {
    lines_.push_back(name + " begin");
    std::istringstream in(body);
    for (std::string line; std::getline(in, line);) lines_.push_back(line);
    lines_.push_back(name + " end");
  }

  void print(std::chrono::steady_clock::time_point start) const {
    for (const auto& l : lines_) std::cout << l << '\n';
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    std::cout << "elapsed_ms " << ms.count() << '\n';
  }

 private:
  std::vector<std::string> lines_;
};

VertexSet parse_id_list(const std::string& text) {
  std::string spaced = text;
  for (char& ch : spaced)
    if (ch == ',') ch = ' ';
  std::istringstream in(spaced);
  return io::read_vertex_list(in);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(0, "cannot write '" + path + "'");
  out << text;
}

// ----------------------------------------------------------------------------

struct SolveOptions {
  std::string graph;
  std::string require;
  std::string separate;
  std::optional<int> eta;
  bool oracle = false;
};

int run_solve(const SolveOptions& o, const OracleLimits& limits) {
  const auto start = std::chrono::steady_clock::now();
  const std::string text = slurp(o.graph);
  Graph g = io::parse_edge_list(text);
  FvsConstraint c{parse_id_list(o.require), parse_id_list(o.separate)};
  g.require_subset(c.require, "--require");
  g.require_subset(c.separate, "--separate");
  const bool constrained = !c.require.empty() || !c.separate.empty();

  Report report("solve", {text});
  TreeDecomposition td;
  if (o.eta) {
    auto ef = compute_elimination_forest(g, *o.eta);
    if (!ef) throw InputError("elimination distance exceeds --eta " + std::to_string(*o.eta));
    td = tree_decomposition_from_elimination_forest(g, *ef);
  } else {
    td = decomposition_for(g);
  }
  const int size = fvs_size(g, td);
  report.add("vertices", g.vertex_count());
  report.add("edges", g.edge_count());
  report.add("width", td.width());
  report.add("fvs", size);
  std::optional<bool> answer;
  if (constrained) {
    answer = exists_min_fvs_with(g, td, c);
    report.ids("require", c.require);
    report.ids("separate", c.separate);
    report.add("answer", *answer ? "yes" : "no");
  }
  if (o.oracle) {
    const auto brute = brute_force_fvs(g, limits);
    bool agree = brute.size == static_cast<std::size_t>(size);
    if (answer) agree = agree && brute_exists_min_fvs_with(g, c, limits) == *answer;
    report.add("oracle_fvs", brute.size);
    report.ids("oracle_witness", brute.witness);
    report.add("oracle", agree ? "agree" : "mismatch");
    report.print(start);
    return agree ? kOk : kMismatch;
  }
  report.print(start);
  return kOk;
}

struct KernelOptions {
  std::string graph;
  std::string modulator;
  int eta = 1;
  std::optional<std::uint64_t> gamma;
  std::optional<std::size_t> subset_cap;
  bool verify = false;
  std::string output;
};

int run_kernelize(const KernelOptions& o, const OracleLimits& limits) {
  const auto start = std::chrono::steady_clock::now();
  const std::string graph_text = slurp(o.graph), mod_text = slurp(o.modulator);
  Graph g = io::parse_edge_list(graph_text);
  std::istringstream mod_in(mod_text);
  VertexSet x = io::read_vertex_list(mod_in);

  Report report("kernelize", {graph_text, mod_text});
  GammaConfig cfg{o.gamma, o.subset_cap};
  KernelStep step = kernelize(g, x, o.eta, cfg);

  report.add("eta", o.eta);
  report.add("input_vertices", g.vertex_count());
  report.add("input_edges", g.edge_count());
  report.add("modulator_size", x.size());
  report.add("kernel_vertices", step.reduced.vertex_count());
  report.add("kernel_edges", step.reduced.edge_count());
  report.add("delta", step.delta);
  report.ids("final_modulator", step.modulator);
  std::ostringstream record;
  write_kernel_record(record, step);
  if (o.output.empty()) report.block("record", record.str());
  else write_text(o.output, record.str());

  if (o.verify) {
    const auto before = brute_force_fvs(g, limits).size;
    const auto after = brute_force_fvs(step.reduced, limits).size;
    const bool ok = before == after + step.delta;
    report.add("fvs_input", before);
    report.add("fvs_kernel", after);
    report.add("verified", ok ? "yes" : "no");
    report.print(start);
    return ok ? kOk : kMismatch;
  }
  report.print(start);
  return kOk;
}

struct ReduceOptions {
  std::string cnf;
  std::string pattern = "k3";
  bool verify = false;
  std::string graph_out;
  std::string sidecar_out;
};

int run_reduce_sat(const ReduceOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  const std::string text = slurp(o.cnf);
  CnfFormula f = io::parse_dimacs(text);
  if (o.pattern != "k3") throw UnsupportedPatternError("unknown pattern '" + o.pattern + "'");
  NecklaceStructure s = k3_structure();
  ReductionInstance r = reduce_cnf(f, s);

  Report report("reduce-sat", {text});
  report.add("pattern", o.pattern);
  report.add("variables", f.variable_count);
  report.add("clauses", f.clauses.size());
  report.add("literal_occurrences", f.literal_occurrences());
  report.add("vertices", r.graph.vertex_count());
  report.add("edges", r.graph.edge_count());
  report.add("modulator_size", r.modulator.size());
  report.add("budget", r.budget);

  std::ostringstream graph_text, sidecar;
  io::write_edge_list(graph_text, r.graph);
  write_reduction_sidecar(sidecar, r, f);
  if (o.graph_out.empty()) report.block("graph", graph_text.str());
  else write_text(o.graph_out, graph_text.str());
  if (o.sidecar_out.empty()) report.block("sidecar", sidecar.str());
  else write_text(o.sidecar_out, sidecar.str());

  if (o.verify) {
    const bool sat = satisfiable(f);
    const auto deletion = find_deletion_set(r, s.pattern);
    bool ok = sat == deletion.has_value();
    if (deletion) ok = ok && f.evaluate(extract_assignment(r, *deletion));
    report.add("satisfiable", sat ? "yes" : "no");
    report.add("deletion_set_within_budget", deletion ? "yes" : "no");
    report.add("equivalence", ok ? "holds" : "violated");
    report.print(start);
    return ok ? kOk : kMismatch;
  }
  report.print(start);
  return kOk;
}

struct EdOptions {
  std::string graph;
  int cap = 3;
};

int run_ed(const EdOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  const std::string text = slurp(o.graph);
  Graph g = io::parse_edge_list(text);
  Report report("ed", {text});
  auto ef = std::optional<EliminationForest>();
  int value = -1;
  for (int eta = 0; eta <= o.cap && !ef; ++eta)
    if ((ef = compute_elimination_forest(g, eta))) value = eta;
  if (!ef) {
    report.add("ed", "above-cap");
    report.add("cap", o.cap);
    report.print(start);
    return kCap;
  }
  report.add("ed", value);
  report.add("nodes", ef->node_count());
  std::ostringstream forest;
  write_elimination_forest(forest, *ef);
  report.block("forest", forest.str());
  report.print(start);
  return kOk;
}

struct ValidateOptions {
  std::string graph;
  std::string forest;
  int eta = 0;
};

int run_validate(const ValidateOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  const std::string graph_text = slurp(o.graph), forest_text = slurp(o.forest);
  Graph g = io::parse_edge_list(graph_text);
  std::istringstream forest_in(forest_text);
  EliminationForest ef = read_elimination_forest(forest_in);
  Report report("validate", {graph_text, forest_text});
  ForestValidation v = validate_elimination_forest(g, ef, o.eta);
  report.add("eta", o.eta);
  report.add("height", ef.height());
  report.add("valid", v.ok() ? "yes" : "no");
  for (const auto& item : v.violations) report.add("violation", std::string(to_string(item.kind)) + ": " + item.detail);
  report.print(start);
  return v.ok() ? kOk : kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Feedback vertex set kernelization toolkit"};
  app.set_config("--config", "", "Read options from a TOML/INI file");
  app.require_subcommand(1);

  SolveOptions solve;
  auto* cmd_solve = app.add_subcommand("solve", "Minimum feedback vertex set via tree-decomposition DP");
  cmd_solve->add_option("graph", solve.graph, "Edge-list file")->required();
  cmd_solve->add_option("--require", solve.require, "Comma-separated ids that must be in the solution");
  cmd_solve->add_option("--separate", solve.separate, "Comma-separated terminal ids to separate");
  cmd_solve->add_option("--eta", solve.eta, "Build the decomposition from a forest of this height")->check(CLI::NonNegativeNumber);
  cmd_solve->add_flag("--oracle", solve.oracle, "Cross-check against brute force");

  KernelOptions kern;
  auto* cmd_kernel = app.add_subcommand("kernelize", "Reduce an instance given a modulator");
  cmd_kernel->add_option("graph", kern.graph, "Edge-list file")->required();
  cmd_kernel->add_option("modulator", kern.modulator, "Vertex-list file")->required();
  cmd_kernel->add_option("--eta", kern.eta, "Elimination distance bound of G - X")->check(CLI::NonNegativeNumber);
  cmd_kernel->add_option("--gamma", kern.gamma, "Override gamma (sound only when >= the default bound)");
  cmd_kernel->add_option("--subset-cap", kern.subset_cap, "Largest modulator subset to enumerate");
  cmd_kernel->add_flag("--verify", kern.verify, "Check fvs(G) = fvs(kernel) + delta by brute force");
  cmd_kernel->add_option("-o,--output", kern.output, "Write the kernel record here");

  ReduceOptions red;
  auto* cmd_reduce = app.add_subcommand("reduce-sat", "Build the deletion instance of a CNF formula");
  cmd_reduce->add_option("cnf", red.cnf, "DIMACS file")->required();
  cmd_reduce->add_option("--pattern", red.pattern, "Bead pattern")->check(CLI::IsMember({"k3"}));
  cmd_reduce->add_flag("--verify", red.verify, "Check SAT against a deletion set within budget");
  cmd_reduce->add_option("--graph-out", red.graph_out, "Write the graph here");
  cmd_reduce->add_option("--sidecar-out", red.sidecar_out, "Write the sidecar record here");

  EdOptions ed;
  auto* cmd_ed = app.add_subcommand("ed", "Elimination distance to a forest with a witness");
  cmd_ed->add_option("graph", ed.graph, "Edge-list file")->required();
  cmd_ed->add_option("--cap", ed.cap, "Largest value searched")->check(CLI::NonNegativeNumber);

  ValidateOptions val;
  auto* cmd_validate = app.add_subcommand("validate", "Check an elimination forest");
  cmd_validate->add_option("graph", val.graph, "Edge-list file")->required();
  cmd_validate->add_option("forest", val.forest, "Forest file")->required();
  cmd_validate->add_option("--eta", val.eta, "Height bound")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const OracleLimits limits = OracleLimits::from_environment();
    if (cmd_solve->parsed()) return run_solve(solve, limits);
    if (cmd_kernel->parsed()) return run_kernelize(kern, limits);
    if (cmd_reduce->parsed()) return run_reduce_sat(red);
    if (cmd_ed->parsed()) return run_ed(ed);
    if (cmd_validate->parsed()) return run_validate(val);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UnsupportedPatternError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const OracleLimitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCap;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
