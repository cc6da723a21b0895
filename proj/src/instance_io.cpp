#include "cmapf/instance_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace cmapf {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream words(line.substr(0, line.find('#')));
  std::string w;
  while (words >> w) out.push_back(w);
  return out;
}

template <class T>
T number(const std::string& token, std::size_t line, const char* what) {
  T value{};
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw ParseError(line, std::string("bad ") + what + " '" + token + "'");
  return value;
}

struct PendingConstraint {
  std::size_t line;
  CapacityConstraint constraint;
};

}  // namespace

CmapfInstance parse_instance(std::istream& in) {
  std::vector<VertexId> nodes;
  std::vector<std::pair<std::size_t, Edge>> edges;
  std::vector<PendingConstraint> constraints;
  std::vector<std::pair<std::size_t, std::vector<VertexId>>> pebbles;  // id src [dst]
  std::optional<PebbleId> marked;
  bool undirected = false;
  bool adjacency = false;
  std::optional<std::size_t> grid;

  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto t = tokenize(raw);
    if (t.empty()) continue;
    const auto& kw = t[0];
    if (kw == "nodes") {
      for (std::size_t i = 1; i < t.size(); ++i) nodes.push_back(number<VertexId>(t[i], line, "vertex id"));
    } else if (kw == "grid" || kw.rfind("grid:", 0) == 0) {
      const std::string arg = kw == "grid" ? (t.size() == 2 ? t[1] : "") : kw.substr(5);
      if (arg.empty() || (kw != "grid" && t.size() != 1)) throw ParseError(line, "expected 'grid N'");
      if (grid) throw ParseError(line, "duplicate grid declaration");
      grid = number<std::size_t>(arg, line, "grid size");
    } else if (kw == "edge") {
      if (t.size() != 3) throw ParseError(line, "expected 'edge u v'");
      edges.push_back({line, {number<VertexId>(t[1], line, "vertex id"), number<VertexId>(t[2], line, "vertex id")}});
    } else if (kw == "undirected") {
      if (t.size() != 1) throw ParseError(line, "'undirected' takes no arguments");
      undirected = true;
    } else if (kw == "adjacency-constraints") {
      if (t.size() != 1) throw ParseError(line, "'adjacency-constraints' takes no arguments");
      adjacency = true;
    } else if (kw == "constraint") {
      // constraint k: v1 v2 ... [weights w1 ...]; the colon may stand alone.
      std::vector<std::string> rest(t.begin() + 1, t.end());
      if (rest.empty()) throw ParseError(line, "expected 'constraint k: v1 v2 ...'");
      std::string cap = rest[0];
      std::size_t pos = 1;
      if (!cap.empty() && cap.back() == ':') {
        cap.pop_back();
      } else if (pos < rest.size() && rest[pos] == ":") {
        ++pos;
      } else {
        throw ParseError(line, "expected ':' after capacity");
      }
      PendingConstraint pending{line, {}};
      pending.constraint.capacity = number<Weight>(cap, line, "capacity");
      std::vector<VertexId> scope;
      for (; pos < rest.size() && rest[pos] != "weights"; ++pos)
        scope.push_back(number<VertexId>(rest[pos], line, "vertex id"));
      if (scope.empty()) throw ParseError(line, "constraint scope is empty");
      if (std::set<VertexId>(scope.begin(), scope.end()).size() != scope.size())
        throw ParseError(line, "constraint scope repeats a vertex");
      if (pos < rest.size()) {
        ++pos;
        if (rest.size() - pos != scope.size()) throw ParseError(line, "weights must match the scope length");
        for (std::size_t i = 0; i < scope.size(); ++i)
          pending.constraint.weights[scope[i]] = number<Weight>(rest[pos + i], line, "weight");
      }
      pending.constraint.scope = VertexSet(std::move(scope));
      constraints.push_back(std::move(pending));
    } else if (kw == "pebble") {
      if (t.size() != 3 && t.size() != 4) throw ParseError(line, "expected 'pebble id src [dst]'");
      std::vector<VertexId> fields;
      for (std::size_t i = 1; i < t.size(); ++i) fields.push_back(number<VertexId>(t[i], line, "pebble field"));
      pebbles.push_back({line, std::move(fields)});
    } else if (kw == "marked") {
      if (t.size() != 2) throw ParseError(line, "expected 'marked id'");
      if (marked) throw ParseError(line, "duplicate marked pebble");
      marked = number<PebbleId>(t[1], line, "pebble id");
    } else {
      throw ParseError(line, "unknown directive '" + kw + "'");
    }
  }

  std::vector<Edge> edge_list;
  if (grid) {
    if (!nodes.empty()) throw ParseError(0, "'grid' and 'nodes' are mutually exclusive");
    Digraph g;
    try {
      g = grid_graph(*grid);
    } catch (const Error& e) {
      throw ParseError(0, e.what());
    }
    nodes = g.vertices();
    edge_list = g.edges();
  }
  if (nodes.empty()) throw ParseError(0, "no nodes declared");
  const std::set<VertexId> node_set(nodes.begin(), nodes.end());
  if (node_set.size() != nodes.size()) throw ParseError(0, "duplicate node id");
  auto known = [&](VertexId v, std::size_t at) {
    if (!node_set.count(v)) throw ParseError(at, "unknown vertex " + std::to_string(v));
  };
  for (const auto& [at, e] : edges) {
    known(e.first, at);
    known(e.second, at);
    if (e.first == e.second) throw ParseError(at, "self-loop on vertex " + std::to_string(e.first));
    edge_list.push_back(e);
    if (undirected) edge_list.emplace_back(e.second, e.first);
  }

  CmapfInstance inst;
  inst.graph = Digraph(nodes, edge_list);

  std::vector<CapacityConstraint> cs;
  for (auto& pending : constraints) {
    for (auto v : pending.constraint.scope) known(v, pending.line);
    try {
      pending.constraint.validate();
    } catch (const Error& e) {
      throw ParseError(pending.line, e.what());
    }
    cs.push_back(std::move(pending.constraint));
  }
  if (adjacency) {
    const auto adj = adjacency_constraints(inst.graph);
    cs.insert(cs.end(), adj.constraints().begin(), adj.constraints().end());
  }
  inst.constraints = ConstraintSet(inst.graph.vertices(), std::move(cs));

  std::set<PebbleId> seen;
  for (const auto& [at, fields] : pebbles) {
    const auto id = static_cast<PebbleId>(fields[0]);
    if (!seen.insert(id).second) throw ParseError(at, "duplicate pebble " + std::to_string(id));
    known(fields[1], at);
    inst.source.place(id, fields[1]);
    if (fields.size() == 3) {
      known(fields[2], at);
      inst.target.place(id, fields[2]);
    }
  }
  inst.marked = marked;
  try {
    inst.validate();
  } catch (const Error& e) {
    throw ParseError(0, e.what());
  }
  return inst;
}

CmapfInstance parse_instance_string(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

CmapfInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path);
  return parse_instance(in);
}

void write_instance(std::ostream& out, const CmapfInstance& inst) {
  out << "nodes";
  for (auto v : inst.graph.vertices()) out << ' ' << v;
  out << '\n';
  for (const auto& [u, v] : inst.graph.edges()) out << "edge " << u << ' ' << v << '\n';
  for (const auto& c : inst.constraints.constraints()) {
    out << "constraint " << c.capacity << ':';
    for (auto v : c.scope) out << ' ' << v;
    const bool weighted = std::any_of(c.scope.begin(), c.scope.end(), [&](VertexId v) { return c.weight_of(v) != 1; });
    if (weighted) {
      out << " weights";
      for (auto v : c.scope) out << ' ' << c.weight_of(v);
    }
    out << '\n';
  }
  for (const auto& [p, v] : inst.source.placement()) {
    out << "pebble " << p << ' ' << v;
    if (inst.target.has(p)) out << ' ' << inst.target.at(p);
    out << '\n';
  }
  if (inst.marked) out << "marked " << *inst.marked << '\n';
}

std::string instance_to_string(const CmapfInstance& inst) {
  std::ostringstream out;
  write_instance(out, inst);
  return out.str();
}

void write_plan(std::ostream& out, Status status, const Plan& plan) {
  out << to_string(status) << '\n';
  for (const auto& m : plan) out << m.from << " -> " << m.to << '\n';
}

PlanFile parse_plan(std::istream& in) {
  PlanFile file;
  std::string raw;
  std::size_t line = 0;
  bool first = true;
  while (std::getline(in, raw)) {
    ++line;
    auto t = tokenize(raw);
    if (t.empty()) continue;
    if (first && t.size() == 1) {
      try {
        file.status = status_from_string(t[0]);
      } catch (const Error& e) {
        throw ParseError(line, e.what());
      }
      first = false;
      continue;
    }
    first = false;
    if (t.size() != 3 || t[1] != "->") throw ParseError(line, "expected 'u -> v'");
    file.plan.push_back({number<VertexId>(t[0], line, "vertex id"), number<VertexId>(t[2], line, "vertex id")});
  }
  return file;
}

PlanFile load_plan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path);
  return parse_plan(in);
}

}  // namespace cmapf
