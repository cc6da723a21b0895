#include "cmapf/gadgets.hpp"

#include <algorithm>
#include <sstream>

namespace cmapf {

void CnfFormula::validate() const {
  for (std::size_t j = 0; j < clauses.size(); ++j) {
    const auto& clause = clauses[j];
    if (clause.empty() || clause.size() > 3)
      throw Error("clause " + std::to_string(j + 1) + " has " + std::to_string(clause.size()) +
                  " literals; expected 1 to 3");
    for (const auto& lit : clause)
      if (lit.variable == 0 || lit.variable > variable_count)
        throw Error("clause " + std::to_string(j + 1) + " uses unknown variable " + std::to_string(lit.variable));
  }
}

bool CnfFormula::evaluate(const std::vector<bool>& assignment) const {
  if (assignment.size() != variable_count) throw Error("assignment size does not match variable count");
  return std::all_of(clauses.begin(), clauses.end(), [&](const Clause& clause) {
    return std::any_of(clause.begin(), clause.end(),
                       [&](const Literal& lit) { return assignment[lit.variable - 1] == lit.positive; });
  });
}

CnfFormula parse_dimacs(std::istream& in) {
  CnfFormula f;
  bool header = false;
  std::size_t declared_clauses = 0;
  Clause current;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) -> Error {
    return Error("line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream words(line);
    std::string first;
    if (!(words >> first)) continue;
    if (first == "c" || first[0] == '%') continue;
    if (first == "p") {
      std::string format;
      long long n = -1, m = -1;
      if (header) throw fail("duplicate header");
      if (!(words >> format >> n >> m) || format != "cnf" || n < 0 || m < 0) throw fail("malformed header");
      f.variable_count = static_cast<std::uint32_t>(n);
      declared_clauses = static_cast<std::size_t>(m);
      header = true;
      continue;
    }
    if (!header) throw fail("clause before header");
    words.clear();
    words.str(line);
    long long value;
    while (words >> value) {
      if (value == 0) {
        if (current.empty()) throw fail("empty clause");
        f.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      const auto var = static_cast<unsigned long long>(value < 0 ? -value : value);
      if (var > f.variable_count) throw fail("variable " + std::to_string(var) + " exceeds header");
      current.push_back({static_cast<std::uint32_t>(var), value > 0});
      if (current.size() > 3) throw fail("clause with more than 3 literals");
    }
    if (!words.eof()) throw fail("unexpected token");
  }
  if (!header) throw Error("missing 'p cnf' header");
  if (!current.empty()) throw Error("line " + std::to_string(line_no) + ": clause not terminated by 0");
  if (f.clauses.size() != declared_clauses)
    throw Error("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                std::to_string(f.clauses.size()));
  return f;
}

CnfFormula parse_dimacs_string(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

SatGadget sat_to_cmp(const CnfFormula& f) {
  f.validate();
  SatLayout layout;
  VertexId next = 2;
  for (const auto& clause : f.clauses) {
    auto& row = layout.clause_nodes.emplace_back();
    for (std::size_t m = 0; m < clause.size(); ++m) row.push_back(next++);
  }
  layout.t = next++;
  for (std::uint32_t i = 0; i < f.variable_count; ++i) {
    layout.obstacle.push_back(next++);
    layout.positive.push_back(next++);
    layout.negative.push_back(next++);
  }

  std::vector<VertexId> vertices(next);
  for (VertexId v = 0; v < next; ++v) vertices[v] = v;

  std::vector<Edge> edges{{layout.s, layout.d1}};
  std::vector<VertexId> previous{layout.d1};
  for (const auto& row : layout.clause_nodes) {
    for (auto u : previous)
      for (auto v : row) edges.emplace_back(u, v);
    previous = row;
  }
  for (auto u : previous) edges.emplace_back(u, layout.t);
  for (std::uint32_t i = 0; i < f.variable_count; ++i) {
    edges.emplace_back(layout.obstacle[i], layout.positive[i]);
    edges.emplace_back(layout.obstacle[i], layout.negative[i]);
  }

  std::vector<PairConstraint> pairs;
  for (std::size_t j = 0; j < f.clauses.size(); ++j) {
    for (std::size_t m = 0; m < f.clauses[j].size(); ++m) {
      const auto& lit = f.clauses[j][m];
      const auto literal_node = lit.positive ? layout.positive[lit.variable - 1] : layout.negative[lit.variable - 1];
      pairs.push_back({VertexSet{layout.clause_nodes[j][m], literal_node}, 1});
    }
  }
  for (auto o : layout.obstacle) pairs.push_back({VertexSet{layout.d1, o}, 1});

  SatGadget out;
  out.instance.graph = Digraph(vertices, edges);
  out.instance.constraints = ConstraintSet::from_pairs(vertices, pairs);
  out.instance.source.place(kMarkedPebble, layout.s);
  out.instance.target.place(kMarkedPebble, layout.t);
  for (std::uint32_t i = 0; i < f.variable_count; ++i) out.instance.source.place(i + 1, layout.obstacle[i]);
  out.instance.marked = kMarkedPebble;
  out.layout = std::move(layout);
  return out;
}

std::vector<bool> decode_assignment(const SatGadget& gadget, const Configuration& final_cfg) {
  const auto& layout = gadget.layout;
  std::vector<bool> assignment(layout.obstacle.size(), false);
  for (std::size_t i = 0; i < layout.obstacle.size(); ++i) {
    const auto at = final_cfg.at(static_cast<PebbleId>(i + 1));
    if (at == layout.positive[i]) {
      assignment[i] = false;
    } else if (at == layout.negative[i]) {
      assignment[i] = true;
    } else {
      throw Error("gadget contract violated: obstacle " + std::to_string(i + 1) + " ended on vertex " +
                  std::to_string(at));
    }
  }
  return assignment;
}

void MisInstance::validate() const {
  for (const auto& [u, v] : graph.edges())
    if (!graph.has_edge(v, u)) throw Error("MIS graph must be symmetric; missing (" + std::to_string(v) + "," +
                                           std::to_string(u) + ")");
}

VertexId mis_hub(const MisInstance& m) {
  return m.graph.empty() ? 1 : m.graph.vertices().back() + 1;
}

CmisInstance mis_to_cmis(const MisInstance& m, Weight capacity) {
  m.validate();
  if (capacity < 0) throw Error("capacity must be non-negative");
  const VertexId hub = mis_hub(m);
  auto vertices = m.graph.vertices();
  auto edges = m.graph.edges();
  for (auto v : m.graph.vertices()) {
    edges.emplace_back(hub, v);
    edges.emplace_back(v, hub);
  }
  vertices.push_back(hub);

  std::vector<CapacityConstraint> constraints;
  for (const auto& [u, v] : m.graph.edges())
    if (u < v) constraints.push_back({VertexSet{u, v}, 1, {}});
  constraints.push_back({VertexSet(vertices), capacity, {{hub, 2}}});

  CmisInstance out;
  out.graph = Digraph(vertices, edges);
  out.constraints = ConstraintSet(vertices, std::move(constraints));
  return out;
}

}  // namespace cmapf
