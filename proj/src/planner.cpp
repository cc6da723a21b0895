#include "cmapf/planner.hpp"

#include <algorithm>
#include <cstring>
#include <unordered_map>

#include "cmapf/cmis.hpp"

namespace cmapf {

VertexId Configuration::at(PebbleId p) const {
  auto it = placement_.find(p);
  if (it == placement_.end()) throw Error("unknown pebble " + std::to_string(p));
  return it->second;
}

std::optional<PebbleId> Configuration::pebble_at(VertexId v) const {
  for (const auto& [p, at] : placement_)
    if (at == v) return p;
  return std::nullopt;
}

VertexSet Configuration::occupied() const {
  std::vector<VertexId> ids;
  for (const auto& [p, v] : placement_) ids.push_back(v);
  return VertexSet(std::move(ids));
}

bool Configuration::is_valid() const { return occupied().size() == placement_.size(); }

bool Configuration::satisfies(const Configuration& goal) const {
  for (const auto& [p, v] : goal.placement()) {
    auto it = placement_.find(p);
    if (it == placement_.end() || it->second != v) return false;
  }
  return true;
}

Configuration CmapfInstance::goal() const {
  if (!marked) return target;
  return Configuration{{*marked, target.at(*marked)}};
}

void CmapfInstance::validate() const {
  require_shared_universe(graph, constraints);
  if (!source.is_valid()) throw Error("source configuration is not injective");
  if (!target.is_valid()) throw Error("target configuration is not injective");
  for (const auto& [p, v] : source.placement())
    if (!graph.has_vertex(v)) throw Error("pebble " + std::to_string(p) + " starts outside the graph");
  for (const auto& [p, v] : target.placement()) {
    if (!graph.has_vertex(v)) throw Error("pebble " + std::to_string(p) + " targets a vertex outside the graph");
    if (!source.has(p)) throw Error("target names unknown pebble " + std::to_string(p));
  }
  if (marked) {
    if (!source.has(*marked) || !target.has(*marked)) throw Error("marked pebble needs a source and a target");
  } else if (target.size() != source.size()) {
    throw Error("every pebble needs a target unless a marked pebble is given");
  }
}

Configuration apply_move(const Digraph& g, const Configuration& cfg, const Move& m) {
  if (!g.has_edge(m.from, m.to))
    throw Error("transition undefined: (" + std::to_string(m.from) + "," + std::to_string(m.to) +
                ") is not an edge");
  auto mover = cfg.pebble_at(m.from);
  if (!mover) throw Error("transition undefined: no pebble at " + std::to_string(m.from));
  if (cfg.pebble_at(m.to)) throw Error("transition undefined: vertex " + std::to_string(m.to) + " is occupied");
  Configuration next = cfg;
  next.place(*mover, m.to);
  return next;
}

namespace {

void check_occupancy(const ConstraintSet& c, const Configuration& cfg, std::size_t prefix) {
  const auto occupied = cfg.occupied();
  if (auto bad = c.first_violation(occupied)) {
    const auto& constraint = c.constraints()[*bad];
    throw ConstraintBreach(prefix, *bad,
                           "constraint breach at prefix " + std::to_string(prefix) + ": occupancy {" +
                               occupied.to_string() + "} exceeds capacity " +
                               std::to_string(constraint.capacity) + " on scope {" + constraint.scope.to_string() +
                               "}");
  }
}

}  // namespace

Configuration apply_plan(const Digraph& g, const Configuration& cfg, const Plan& plan, const ConstraintSet* check) {
  if (!cfg.is_valid()) throw PlanError(0, "start configuration is not injective");
  if (check) check_occupancy(*check, cfg, 0);
  Configuration current = cfg;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    try {
      current = apply_move(g, current, plan[i]);
    } catch (const PlanError&) {
      throw;
    } catch (const Error& e) {
      throw PlanError(i + 1, "move " + std::to_string(i) + " (prefix " + std::to_string(i + 1) + "): " + e.what());
    }
    if (check) check_occupancy(*check, current, i + 1);
  }
  return current;
}

namespace {

// Labelled pebbles in increasing id order; positions as dense graph indices.
struct PebbleLayout {
  std::vector<PebbleId> ids;
  std::vector<std::uint32_t> start;
  std::vector<std::pair<std::size_t, std::uint32_t>> goal;  // (pebble slot, vertex)
};

PebbleLayout layout(const Digraph& g, const Configuration& source, const Configuration& goal) {
  PebbleLayout out;
  for (const auto& [p, v] : source.placement()) {
    out.ids.push_back(p);
    out.start.push_back(static_cast<std::uint32_t>(g.index_of(v)));
  }
  for (const auto& [p, v] : goal.placement()) {
    auto it = std::lower_bound(out.ids.begin(), out.ids.end(), p);
    if (it == out.ids.end() || *it != p) throw Error("goal names unknown pebble " + std::to_string(p));
    out.goal.emplace_back(static_cast<std::size_t>(it - out.ids.begin()), static_cast<std::uint32_t>(g.index_of(v)));
  }
  return out;
}

std::string encode(const std::vector<std::uint32_t>& positions) {
  std::string key(positions.size() * sizeof(std::uint32_t), '\0');
  std::memcpy(key.data(), positions.data(), key.size());
  return key;
}

std::vector<std::uint32_t> decode(const std::string& key) {
  std::vector<std::uint32_t> positions(key.size() / sizeof(std::uint32_t));
  std::memcpy(positions.data(), key.data(), key.size());
  return positions;
}

// Breadth-first search over configurations. `admit(positions, slot, from, to)`
// vets the successor obtained by moving pebble `slot`.
template <class Admit>
std::optional<Plan> search(const Digraph& g, const PebbleLayout& pebbles, std::size_t cap, Admit admit,
                           const char* budget_message) {
  auto reached = [&](const std::vector<std::uint32_t>& pos) {
    return std::all_of(pebbles.goal.begin(), pebbles.goal.end(),
                       [&](const auto& slot_vertex) { return pos[slot_vertex.first] == slot_vertex.second; });
  };
  if (reached(pebbles.start)) return Plan{};

  struct Node {
    std::string key;
    std::uint32_t parent;
    Move move;
  };
  std::vector<Node> nodes;
  std::unordered_map<std::string, std::uint32_t> index;
  nodes.push_back({encode(pebbles.start), 0, {}});
  index.emplace(nodes.back().key, 0);

  std::vector<char> occupied(g.vertex_count(), 0);
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    auto pos = decode(nodes[head].key);
    std::fill(occupied.begin(), occupied.end(), 0);
    for (auto v : pos) occupied[v] = 1;
    for (std::size_t slot = 0; slot < pos.size(); ++slot) {
      const auto from = pos[slot];
      for (auto to : g.out_indices(from)) {
        if (occupied[to]) continue;
        pos[slot] = to;
        if (admit(pos, slot, from, to)) {
          auto key = encode(pos);
          if (!index.count(key)) {
            if (nodes.size() >= cap) throw Error(budget_message);
            const auto id = static_cast<std::uint32_t>(nodes.size());
            nodes.push_back({key, static_cast<std::uint32_t>(head), {g.id_at(from), g.id_at(to)}});
            index.emplace(std::move(key), id);
            if (reached(pos)) {
              Plan plan;
              for (auto at = id; at != 0; at = nodes[at].parent) plan.push_back(nodes[at].move);
              std::reverse(plan.begin(), plan.end());
              return plan;
            }
          }
        }
        pos[slot] = from;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Plan> solve_mapf(const Digraph& g, const Configuration& source, const Configuration& goal,
                               std::size_t state_cap) {
  if (!source.is_valid()) throw Error("source configuration is not injective");
  const auto pebbles = layout(g, source, goal);
  return search(g, pebbles, state_cap, [](const auto&, std::size_t, std::uint32_t, std::uint32_t) { return true; },
                "state budget exceeded");
}

Plan lift_plan(const ReducedGraph& rg, const Plan& plan) {
  Plan lifted;
  for (const auto& m : plan) {
    const auto& path = rg.lift(m.from, m.to);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) lifted.push_back({path[i], path[i + 1]});
  }
  return lifted;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::feasible:
      return "FEASIBLE";
    case Status::infeasible_via_reduction:
      return "INFEASIBLE_VIA_REDUCTION";
    case Status::proven_infeasible:
      return "PROVEN_INFEASIBLE";
  }
  return "?";
}

Status status_from_string(const std::string& s) {
  if (s == "FEASIBLE") return Status::feasible;
  if (s == "INFEASIBLE_VIA_REDUCTION") return Status::infeasible_via_reduction;
  if (s == "PROVEN_INFEASIBLE") return Status::proven_infeasible;
  throw Error("unknown status '" + s + "'");
}

ValidationReport validate_plan(const CmapfInstance& inst, const Plan& plan) {
  ValidationReport report;
  try {
    const auto final_cfg = apply_plan(inst.graph, inst.source, plan, &inst.constraints);
    if (!final_cfg.satisfies(inst.goal())) {
      report.reason = "plan ends without every pebble on its target";
      return report;
    }
    report.valid = true;
  } catch (const ConstraintBreach& e) {
    report.prefix_index = e.prefix_index();
    report.constraint = e.constraint();
    report.reason = e.what();
  } catch (const PlanError& e) {
    report.prefix_index = e.prefix_index();
    report.reason = e.what();
  }
  return report;
}

namespace {

SolveResult verified(const CmapfInstance& inst, Plan plan, VertexSet w) {
  const auto report = validate_plan(inst, plan);
  if (!report.valid) throw Error("lifted plan failed validation: " + report.reason);
  return {Status::feasible, std::move(plan), std::move(w)};
}

void require_independent(const CmapfInstance& inst, const VertexSet& w, const char* what) {
  if (!is_independent(inst.graph, inst.constraints, w)) throw Error(std::string(what) + " is not independent");
}

}  // namespace

SolveResult solve_cmapf(const CmapfInstance& inst, const std::optional<VertexSet>& w, const SolveOptions& options) {
  inst.validate();
  const auto goal = inst.goal();
  const auto seed = inst.source.occupied().united(goal.occupied());
  if (!inst.constraints.is_member(inst.source.occupied())) throw Error("source configuration violates constraints");
  if (inst.source.satisfies(goal)) return {Status::feasible, {}, w.value_or(seed)};
  if (!is_independent(inst.graph, inst.constraints, seed)) throw Error("no single-stage reduction");

  VertexSet chosen;
  if (w) {
    if (!seed.is_subset_of(*w)) throw Error("W must contain every source and target vertex");
    require_independent(inst, *w, "W");
    chosen = *w;
  } else {
    chosen = multi_restart({inst.graph, inst.constraints, seed}, options.restart_runs, options.restart_seed).best;
  }

  const auto rg = build_reduced(inst.graph, inst.constraints, chosen);
  const auto plan = solve_mapf(rg.as_digraph(), inst.source, goal, options.state_cap);
  if (!plan) return {Status::infeasible_via_reduction, {}, chosen};
  return verified(inst, lift_plan(rg, *plan), chosen);
}

SolveResult two_stage_solve(const CmapfInstance& inst, const VertexSet& w1, const VertexSet& w2,
                            const SolveOptions& options) {
  inst.validate();
  const auto goal = inst.goal();
  if (!inst.constraints.is_member(inst.source.occupied())) throw Error("source configuration violates constraints");
  if (!inst.source.occupied().is_subset_of(w1)) throw Error("W1 must contain every source vertex");
  if (!goal.occupied().is_subset_of(w2)) throw Error("W2 must contain every target vertex");
  const auto parking = w1.intersected(w2);
  if (parking.size() < inst.source.size()) throw Error("no intermediate parking");
  require_independent(inst, w1, "W1");
  require_independent(inst, w2, "W2");

  // Park on the targets when they already lie in the overlap, otherwise on the
  // lowest parking ids in pebble order.
  Configuration intermediate;
  if (goal.size() == inst.source.size() && goal.occupied().is_subset_of(parking)) {
    intermediate = goal;
  } else {
    auto slot = parking.begin();
    for (const auto& [p, v] : inst.source.placement()) intermediate.place(p, *slot++);
  }

  const auto rg1 = build_reduced(inst.graph, inst.constraints, w1);
  const auto rg2 = build_reduced(inst.graph, inst.constraints, w2);
  const auto first = solve_mapf(rg1.as_digraph(), inst.source, intermediate, options.state_cap);
  if (!first) return {Status::infeasible_via_reduction, {}, w1.united(w2)};
  const auto second = solve_mapf(rg2.as_digraph(), intermediate, goal, options.state_cap);
  if (!second) return {Status::infeasible_via_reduction, {}, w1.united(w2)};

  Plan plan = lift_plan(rg1, *first);
  const Plan tail = lift_plan(rg2, *second);
  plan.insert(plan.end(), tail.begin(), tail.end());
  return verified(inst, std::move(plan), w1.united(w2));
}

SolveResult oracle_cmapf(const CmapfInstance& inst, std::size_t state_cap) {
  inst.validate();
  if (!inst.constraints.is_member(inst.source.occupied())) return {Status::proven_infeasible, {}, {}};
  const auto pebbles = layout(inst.graph, inst.source, inst.goal());
  const auto& g = inst.graph;
  const auto& c = inst.constraints;
  auto admit = [&](const std::vector<std::uint32_t>& pos, std::size_t, std::uint32_t, std::uint32_t) {
    std::vector<VertexId> ids;
    ids.reserve(pos.size());
    for (auto v : pos) ids.push_back(g.id_at(v));
    return c.is_member(VertexSet(std::move(ids)));
  };
  auto plan = search(g, pebbles, state_cap, admit, "oracle budget");
  if (!plan) return {Status::proven_infeasible, {}, {}};
  return {Status::feasible, std::move(*plan), {}};
}

}  // namespace cmapf
