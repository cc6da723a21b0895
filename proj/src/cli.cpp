#include "cmapf/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <sstream>

#include "cmapf/cmis.hpp"
#include "cmapf/gadgets.hpp"
#include "cmapf/instance_io.hpp"
#include "cmapf/planner.hpp"
#include "cmapf/reduction.hpp"

namespace cmapf {

namespace {

// Failure that maps straight onto an exit code.
struct Exit {
  int code;
  std::string message;
};

VertexSet parse_vertex_list(const std::string& text, const char* what) {
  std::vector<VertexId> ids;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      const auto value = std::stoull(item, &used);
      if (used != item.size() || value > std::numeric_limits<VertexId>::max()) throw std::invalid_argument(item);
      ids.push_back(static_cast<VertexId>(value));
    } catch (const std::exception&) {
      throw Exit{kExitParse, std::string("bad ") + what + " entry '" + item + "'"};
    }
  }
  return VertexSet(std::move(ids));
}

CmapfInstance load_or_exit(const std::string& path) {
  try {
    return load_instance(path);
  } catch (const Error& e) {
    throw Exit{kExitParse, path + ": " + e.what()};
  }
}

void require_vertices(const Digraph& g, const VertexSet& w, const char* what) {
  for (auto v : w)
    if (!g.has_vertex(v)) throw Exit{kExitPrecondition, std::string(what) + " names unknown vertex " + std::to_string(v)};
}

std::string path_string(const std::vector<VertexId>& path) {
  std::string s;
  for (std::size_t i = 0; i < path.size(); ++i) s += (i ? "-" : "") + std::to_string(path[i]);
  return s;
}

int cmd_reduce(const std::string& file, const std::string& w_text, std::ostream& out) {
  const auto inst = load_or_exit(file);
  const auto w = parse_vertex_list(w_text, "--w");
  if (w.empty()) throw Exit{kExitParse, "--w must name at least one vertex"};
  require_vertices(inst.graph, w, "--w");
  if (!inst.constraints.is_member(w)) throw Exit{kExitPrecondition, "W {" + w.to_string() + "} is not a member of C"};

  const auto rg = build_reduced(inst.graph, inst.constraints, w);
  out << "W " << w.to_string() << '\n';
  for (const auto& [e, path] : rg.lifts()) out << "edge " << e.first << ' ' << e.second << " lift " << path_string(path) << '\n';
  if (is_strongly_connected(rg.as_digraph())) {
    out << "INDEPENDENT\n";
    return kExitOk;
  }
  out << "NOT INDEPENDENT\n";
  for (auto u : w)
    for (auto v : w)
      if (u != v && !rg.has_edge(u, v)) out << "missing " << u << ' ' << v << '\n';
  return kExitNotIndependent;
}

CmisInstance cmis_source(const std::string& source) {
  if (source.rfind("grid:", 0) == 0) {
    std::size_t n = 0;
    try {
      std::size_t used = 0;
      n = std::stoul(source.substr(5), &used);
      if (used != source.size() - 5) throw std::invalid_argument(source);
    } catch (const std::exception&) {
      throw Exit{kExitParse, "bad grid spec '" + source + "'"};
    }
    try {
      auto g = grid_graph(n);
      auto c = adjacency_constraints(g);
      return {std::move(g), std::move(c), {}};
    } catch (const Error& e) {
      throw Exit{kExitParse, e.what()};
    }
  }
  auto inst = load_or_exit(source);
  return {std::move(inst.graph), std::move(inst.constraints), {}};
}

void csv_row(std::ostream& out, const std::string& run, const VertexSet& w, const std::string& proof) {
  out << run << ',' << w.size() << ',' << w.to_string(';') << ',' << proof << '\n';
}

int cmd_cmis(const std::string& source, const std::string& rule, std::size_t runs, std::uint64_t seed, bool exact,
             double budget, std::ostream& out) {
  const auto inst = cmis_source(source);
  out << "run_index,cardinality,vertex_list,proof\n";
  if (rule == "random") {
    const auto result = multi_restart(inst, runs, seed);
    for (std::size_t i = 0; i < result.runs.size(); ++i) csv_row(out, std::to_string(i), result.runs[i], "HEURISTIC");
  } else {
    const auto chosen = rule == "greedy-psi" ? SelectionRule::greedy_psi() : SelectionRule::greedy_degree();
    csv_row(out, "0", maximal_independent(inst, chosen), "HEURISTIC");
  }
  if (exact) {
    ExactOptions options;
    options.budget = std::chrono::milliseconds(static_cast<std::int64_t>(budget * 1000.0));
    const auto result = exact_cmis(inst, options);
    csv_row(out, "exact", result.best, result.proven_optimal ? "PROVEN" : "UNPROVEN");
  }
  return kExitOk;
}

std::pair<VertexSet, VertexSet> split_two_stage(const std::string& text) {
  const auto semi = text.find(';');
  if (semi == std::string::npos) throw Exit{kExitParse, "--two-stage expects 'w1;w2'"};
  return {parse_vertex_list(text.substr(0, semi), "--two-stage"), parse_vertex_list(text.substr(semi + 1), "--two-stage")};
}

int status_exit(Status s) {
  switch (s) {
    case Status::feasible:
      return kExitOk;
    case Status::infeasible_via_reduction:
      return kExitInfeasibleViaReduction;
    case Status::proven_infeasible:
      return kExitProvenInfeasible;
  }
  return kExitPrecondition;
}

void emit(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& write) {
  if (path.empty() || path == "-") {
    write(out);
    return;
  }
  std::ofstream file(path);
  if (!file) throw Exit{kExitPrecondition, "cannot write " + path};
  write(file);
}

struct SolveArgs {
  std::string file;
  std::string w;
  std::string two_stage;
  bool oracle = false;
  std::size_t runs = 100;
  std::uint64_t seed = 0;
  std::size_t state_cap = 5'000'000;
  std::string output;
};

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  const auto inst = load_or_exit(args.file);
  SolveResult result;
  try {
    if (args.oracle) {
      result = oracle_cmapf(inst, args.state_cap);
    } else {
      SolveOptions options;
      options.state_cap = args.state_cap;
      options.restart_runs = args.runs;
      options.restart_seed = args.seed;
      if (!args.two_stage.empty()) {
        const auto [w1, w2] = split_two_stage(args.two_stage);
        require_vertices(inst.graph, w1, "--two-stage");
        require_vertices(inst.graph, w2, "--two-stage");
        result = two_stage_solve(inst, w1, w2, options);
      } else if (!args.w.empty()) {
        const auto w = parse_vertex_list(args.w, "--w");
        require_vertices(inst.graph, w, "--w");
        result = solve_cmapf(inst, w, options);
      } else {
        result = solve_cmapf(inst, std::nullopt, options);
      }
    }
  } catch (const Exit&) {
    throw;
  } catch (const Error& e) {
    const std::string what = e.what();
    const bool budget = what == "state budget exceeded" || what == "oracle budget";
    throw Exit{budget ? kExitBudget : kExitPrecondition, what};
  }
  if (!result.w.empty() && !args.oracle) err << "W " << result.w.to_string() << '\n';
  emit(args.output, out, [&](std::ostream& o) { write_plan(o, result.status, result.plan); });
  return status_exit(result.status);
}

int cmd_validate(const std::string& file, const std::string& plan_path, std::ostream& out) {
  const auto inst = load_or_exit(file);
  PlanFile plan;
  try {
    plan = load_plan(plan_path);
  } catch (const Error& e) {
    throw Exit{kExitParse, plan_path + ": " + e.what()};
  }
  const auto report = validate_plan(inst, plan.plan);
  if (report.valid) {
    out << "VALID\n";
    return kExitOk;
  }
  out << "INVALID";
  if (report.prefix_index) out << " prefix " << *report.prefix_index;
  out << '\n' << report.reason << '\n';
  if (report.constraint) {
    const auto& c = inst.constraints.constraints()[*report.constraint];
    out << "constraint " << *report.constraint << " scope {" << c.scope.to_string() << "} capacity " << c.capacity
        << '\n';
  }
  return kExitInvalidPlan;
}

int cmd_gadget(const std::string& kind, const std::string& input, std::optional<Weight> capacity,
               const std::string& output, std::ostream& out) {
  CmapfInstance inst;
  if (kind == "sat") {
    std::ifstream in(input);
    if (!in) throw Exit{kExitParse, "cannot open " + input};
    CnfFormula f;
    try {
      f = parse_dimacs(in);
    } catch (const Error& e) {
      throw Exit{kExitParse, input + ": " + e.what()};
    }
    inst = sat_to_cmp(f).instance;
  } else {
    const auto source = load_or_exit(input);
    MisInstance m{source.graph};
    try {
      m.validate();
    } catch (const Error& e) {
      throw Exit{kExitParse, input + ": " + e.what()};
    }
    const auto k = capacity.value_or(static_cast<Weight>(m.graph.vertex_count()));
    auto cmis = mis_to_cmis(m, k);
    inst.graph = std::move(cmis.graph);
    inst.constraints = std::move(cmis.constraints);
  }
  emit(output, out, [&](std::ostream& o) { write_instance(o, inst); });
  return kExitOk;
}

int cmd_bench_grid(std::size_t n_max, std::size_t runs, std::uint64_t seed, std::size_t exact_max, double budget,
                   std::ostream& out) {
  if (n_max < 2) throw Exit{kExitParse, "--n-max must be at least 2"};
  out << "n,random_best,greedy_degree,exact,exact_proof\n";
  for (std::size_t n = 2; n <= n_max; ++n) {
    auto g = grid_graph(n);
    auto c = adjacency_constraints(g);
    const CmisInstance inst{std::move(g), std::move(c), {}};
    const auto random = multi_restart(inst, runs, seed);
    const auto greedy = maximal_independent(inst, SelectionRule::greedy_degree());
    out << n << ',' << random.best.size() << ',' << greedy.size() << ',';
    if (n <= exact_max) {
      ExactOptions options;
      options.budget = std::chrono::milliseconds(static_cast<std::int64_t>(budget * 1000.0));
      const auto exact = exact_cmis(inst, options);
      out << exact.best.size() << ',' << (exact.proven_optimal ? "PROVEN" : "UNPROVEN");
    } else {
      out << ',';
    }
    out << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constrained multi-agent path finding through reduced graphs", "cmapf"};
  app.require_subcommand(1);

  std::string file, w_text;
  auto* reduce = app.add_subcommand("reduce", "Build the reduced graph G_W and report independence");
  reduce->add_option("instance", file, "Instance file")->required();
  reduce->add_option("--w", w_text, "Comma-separated vertex set W")->required();

  std::string source, rule = "random";
  std::size_t runs = 100;
  std::uint64_t seed = 0;
  bool exact = false;
  double budget = 600.0;
  auto* cmis = app.add_subcommand("cmis", "Search for large independent sets (CSV output)");
  cmis->add_option("instance", source, "Instance file or grid:N")->required();
  cmis->add_option("--rule", rule, "Selection rule")->check(CLI::IsMember({"random", "greedy-psi", "greedy-degree"}));
  cmis->add_option("--runs", runs, "Random restarts")->check(CLI::PositiveNumber);
  cmis->add_option("--seed", seed, "Base seed");
  cmis->add_flag("--exact", exact, "Append a branch-and-bound row");
  cmis->add_option("--budget", budget, "Exact search budget in seconds")->check(CLI::NonNegativeNumber);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Solve through a reduction (or with the oracle); prints a plan file");
  solve->add_option("instance", solve_args.file, "Instance file")->required();
  auto* w_opt = solve->add_option("--w", solve_args.w, "Reduction set W");
  solve->add_option("--two-stage", solve_args.two_stage, "Two reduction sets 'w1;w2'")->excludes(w_opt);
  solve->add_flag("--oracle", solve_args.oracle, "Exhaustive search on the original graph");
  solve->add_option("--runs", solve_args.runs, "Restarts used to pick W")->check(CLI::PositiveNumber);
  solve->add_option("--seed", solve_args.seed, "Base seed used to pick W");
  solve->add_option("--state-cap", solve_args.state_cap, "Search state budget")->check(CLI::PositiveNumber);
  solve->add_option("-o,--output", solve_args.output, "Plan file (default stdout)");

  std::string plan_path;
  auto* validate = app.add_subcommand("validate", "Replay a plan with constraint checking");
  validate->add_option("instance", file, "Instance file")->required();
  validate->add_option("plan", plan_path, "Plan file")->required();

  std::string kind, input, output;
  std::optional<Weight> capacity;
  auto* gadget = app.add_subcommand("gadget", "Emit a hardness gadget instance");
  gadget->add_option("kind", kind, "sat or mis")->required()->check(CLI::IsMember({"sat", "mis"}));
  gadget->add_option("input", input, "DIMACS file (sat) or instance file (mis)")->required();
  gadget->add_option("--capacity", capacity,
                     "Hub knapsack capacity for mis; the decision target k (default |V|)");
  gadget->add_option("-o,--output", output, "Output instance file (default stdout)");

  std::size_t n_max = 12, exact_max = 5;
  auto* bench = app.add_subcommand("bench-grid", "Grid benchmark table (CSV)");
  bench->add_option("--n-max", n_max, "Largest grid side");
  bench->add_option("--runs", runs, "Random restarts per grid")->check(CLI::PositiveNumber);
  bench->add_option("--seed", seed, "Base seed");
  bench->add_option("--exact-max", exact_max, "Largest grid side solved exactly");
  bench->add_option("--budget", budget, "Exact search budget in seconds per grid")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*reduce) return cmd_reduce(file, w_text, out);
    if (*cmis) return cmd_cmis(source, rule, runs, seed, exact, budget, out);
    if (*solve) return cmd_solve(solve_args, out, err);
    if (*validate) return cmd_validate(file, plan_path, out);
    if (*gadget) return cmd_gadget(kind, input, capacity, output, out);
    if (*bench) return cmd_bench_grid(n_max, runs, seed, exact_max, budget, out);
  } catch (const Exit& e) {
    err << "error: " << e.message << '\n';
    return e.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitPrecondition;
  }
  return kExitParse;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"cmapf"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace cmapf
