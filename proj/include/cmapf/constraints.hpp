#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cmapf/graph.hpp"

namespace cmapf {

using Weight = std::int64_t;

// Knapsack triple: sum of weights of occupied scope vertices must not exceed
// capacity. Vertices without an explicit weight count as 1.
struct CapacityConstraint {
  VertexSet scope;
  Weight capacity = 0;
  std::map<VertexId, Weight> weights;

  Weight weight_of(VertexId v) const;
  void validate() const;

  friend bool operator==(const CapacityConstraint&, const CapacityConstraint&) = default;
};

using PairConstraint = std::pair<VertexSet, Weight>;

// Family of knapsack constraints over a declared universe. Membership is
// hereditary by construction, so every ConstraintSet is an ASC.
class ConstraintSet {
 public:
  struct Incidence {
    std::uint32_t constraint;
    Weight weight;
  };

  ConstraintSet() = default;
  ConstraintSet(std::vector<VertexId> universe, std::vector<CapacityConstraint> constraints);

  static ConstraintSet from_pairs(std::vector<VertexId> universe, const std::vector<PairConstraint>& pairs);

  const std::vector<VertexId>& universe() const { return universe_; }
  const std::vector<CapacityConstraint>& constraints() const { return constraints_; }
  std::size_t size() const { return constraints_.size(); }

  bool in_universe(VertexId v) const;
  std::size_t index_of(VertexId v) const;  // throws "vertex outside universe"

  // Throws "vertex outside universe" when u holds an unknown id.
  bool is_member(const VertexSet& u) const;
  // Index of the first constraint violated by u, if any.
  std::optional<std::size_t> first_violation(const VertexSet& u) const;

  Weight capacity(std::size_t constraint) const { return constraints_[constraint].capacity; }

  // Non-zero entries of the per-vertex weight vector, sorted by constraint.
  std::span<const Incidence> incidence(std::size_t vertex_index) const {
    return {incidence_.data() + incidence_offsets_[vertex_index],
            incidence_.data() + incidence_offsets_[vertex_index + 1]};
  }
  Weight weight_at(std::size_t vertex_index, std::size_t constraint) const;

  friend bool operator==(const ConstraintSet& a, const ConstraintSet& b) {
    return a.universe_ == b.universe_ && a.constraints_ == b.constraints_;
  }

 private:
  std::vector<VertexId> universe_;
  std::vector<CapacityConstraint> constraints_;
  std::vector<std::uint32_t> incidence_offsets_{0};
  std::vector<Incidence> incidence_;
};

// One unit-capacity pair per unordered adjacency {i, j} of g.
ConstraintSet adjacency_constraints(const Digraph& g);

// Minimal covers of an over-weight subset, each as (cover, |cover| - 1).
std::vector<PairConstraint> expand_covers(const CapacityConstraint& c);

// Enumerates every subset of `universe` and checks the trivial and hereditary
// axioms of an abstract simplicial complex.
bool verify_asc(const std::function<bool(const VertexSet&)>& family, const std::vector<VertexId>& universe,
                std::size_t universe_limit = 16);
bool verify_asc(const ConstraintSet& c, std::size_t universe_limit = 16);

// Running occupancy m of an occupied set M against every constraint.
// add() is transactional: it commits only when M stays a member.
class OccupancyTracker {
 public:
  static constexpr std::uint32_t kNone = static_cast<std::uint32_t>(-1);

  explicit OccupancyTracker(const ConstraintSet& constraints);

  bool add(VertexId v);
  void remove(VertexId v);
  bool check_swap(std::span<const VertexId> drop, VertexId probe) const;

  // Dense-index forms used by the search kernels; preconditions unchecked.
  bool try_add_index(std::uint32_t v);
  void remove_index(std::uint32_t v);
  bool fits_index(std::uint32_t probe) const { return check_swap_index(kNone, kNone, probe); }
  bool check_swap_index(std::uint32_t drop_a, std::uint32_t drop_b, std::uint32_t probe) const;

  bool occupied(VertexId v) const { return occupied_[constraints_->index_of(v)] != 0; }
  bool occupied_index(std::uint32_t v) const { return occupied_[v] != 0; }
  VertexSet members() const;
  const std::vector<Weight>& totals() const { return totals_; }
  const ConstraintSet& constraints() const { return *constraints_; }

 private:
  const ConstraintSet* constraints_;
  std::vector<Weight> totals_;
  std::vector<char> occupied_;
};

}  // namespace cmapf
