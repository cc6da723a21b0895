#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cmapf/constraints.hpp"
#include "cmapf/graph.hpp"
#include "cmapf/reduction.hpp"

namespace cmapf {

using PebbleId = std::uint32_t;

struct Move {
  VertexId from = 0;
  VertexId to = 0;

  friend auto operator<=>(const Move&, const Move&) = default;
};

using Plan = std::vector<Move>;

// Placement of labelled pebbles. Valid when no two pebbles share a vertex.
class Configuration {
 public:
  Configuration() = default;
  Configuration(std::initializer_list<std::pair<const PebbleId, VertexId>> placement) : placement_(placement) {}
  explicit Configuration(std::map<PebbleId, VertexId> placement) : placement_(std::move(placement)) {}

  void place(PebbleId p, VertexId v) { placement_[p] = v; }
  bool has(PebbleId p) const { return placement_.count(p) != 0; }
  VertexId at(PebbleId p) const;
  std::optional<PebbleId> pebble_at(VertexId v) const;

  VertexSet occupied() const;
  bool is_valid() const;
  std::size_t size() const { return placement_.size(); }
  bool empty() const { return placement_.empty(); }
  const std::map<PebbleId, VertexId>& placement() const { return placement_; }

  // True when every pebble of `goal` sits on its goal vertex.
  bool satisfies(const Configuration& goal) const;

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  std::map<PebbleId, VertexId> placement_;
};

// C-MAPF instance; with `marked` set it is a C-MP instance in which only the
// marked pebble's target binds and the other pebbles are movable obstacles.
struct CmapfInstance {
  Digraph graph;
  ConstraintSet constraints;
  Configuration source;
  Configuration target;
  std::optional<PebbleId> marked;

  // Pebbles whose final vertex is prescribed.
  Configuration goal() const;
  void validate() const;
};

// Plan replay failure at a given prefix length (0 = the start configuration).
class PlanError : public Error {
 public:
  PlanError(std::size_t prefix_index, const std::string& what) : Error(what), prefix_index_(prefix_index) {}
  std::size_t prefix_index() const { return prefix_index_; }

 private:
  std::size_t prefix_index_;
};

class ConstraintBreach : public PlanError {
 public:
  ConstraintBreach(std::size_t prefix_index, std::size_t constraint, const std::string& what)
      : PlanError(prefix_index, what), constraint_(constraint) {}
  std::size_t constraint() const { return constraint_; }

 private:
  std::size_t constraint_;
};

// Throws "transition undefined: ..." naming the failed clause.
Configuration apply_move(const Digraph& g, const Configuration& cfg, const Move& m);

// Left fold of apply_move. With `check`, every visited occupancy, the start
// included, must be a member of the constraint set.
Configuration apply_plan(const Digraph& g, const Configuration& cfg, const Plan& plan,
                         const ConstraintSet* check = nullptr);

// Breadth-first search over labelled configurations of an unconstrained
// graph; pebbles absent from `goal` may end anywhere. Returns a shortest plan
// or nullopt once the state space is exhausted.
std::optional<Plan> solve_mapf(const Digraph& g, const Configuration& source, const Configuration& goal,
                               std::size_t state_cap = 5'000'000);

Plan lift_plan(const ReducedGraph& rg, const Plan& plan);

enum class Status { feasible, infeasible_via_reduction, proven_infeasible };

std::string to_string(Status s);
Status status_from_string(const std::string& s);

struct SolveResult {
  Status status = Status::proven_infeasible;
  Plan plan;
  VertexSet w;  // reduction set(s) used; empty for the oracle
};

struct SolveOptions {
  std::size_t state_cap = 5'000'000;
  std::size_t restart_runs = 100;
  std::uint64_t restart_seed = 0;
};

// Single-stage reduction pipeline. Without `w` the largest set found by
// multi_restart around source + target is used. Throws
// "no single-stage reduction" when source + target is not independent.
SolveResult solve_cmapf(const CmapfInstance& inst, const std::optional<VertexSet>& w = std::nullopt,
                        const SolveOptions& options = {});

// Two reductions joined at an intermediate parking configuration inside
// w1 & w2. Throws "no intermediate parking" when the overlap is too small.
SolveResult two_stage_solve(const CmapfInstance& inst, const VertexSet& w1, const VertexSet& w2,
                            const SolveOptions& options = {});

// Exhaustive search on the original graph over constraint-respecting
// configurations. Throws "oracle budget" past `state_cap` states.
SolveResult oracle_cmapf(const CmapfInstance& inst, std::size_t state_cap = 2'000'000);

struct ValidationReport {
  bool valid = false;
  std::optional<std::size_t> prefix_index;
  std::optional<std::size_t> constraint;
  std::string reason;
};

// Replays the plan with constraint checking and checks the goal.
ValidationReport validate_plan(const CmapfInstance& inst, const Plan& plan);

}  // namespace cmapf
