#include "cmapf/constraints.hpp"

#include <algorithm>
#include <set>

namespace cmapf {

Weight CapacityConstraint::weight_of(VertexId v) const {
  auto it = weights.find(v);
  return it == weights.end() ? 1 : it->second;
}

void CapacityConstraint::validate() const {
  if (capacity < 0) throw Error("negative capacity");
  for (const auto& [v, w] : weights) {
    if (!scope.contains(v)) throw Error("weight for vertex " + std::to_string(v) + " outside scope");
    if (w < 1) throw Error("weights must be positive");
  }
}

ConstraintSet::ConstraintSet(std::vector<VertexId> universe, std::vector<CapacityConstraint> constraints)
    : universe_(std::move(universe)), constraints_(std::move(constraints)) {
  std::sort(universe_.begin(), universe_.end());
  universe_.erase(std::unique(universe_.begin(), universe_.end()), universe_.end());

  std::vector<std::vector<Incidence>> per_vertex(universe_.size());
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    const auto& c = constraints_[i];
    c.validate();
    for (auto v : c.scope) {
      per_vertex[index_of(v)].push_back({static_cast<std::uint32_t>(i), c.weight_of(v)});
    }
  }
  incidence_offsets_.assign(universe_.size() + 1, 0);
  for (std::size_t v = 0; v < universe_.size(); ++v) {
    incidence_offsets_[v + 1] = incidence_offsets_[v] + static_cast<std::uint32_t>(per_vertex[v].size());
    incidence_.insert(incidence_.end(), per_vertex[v].begin(), per_vertex[v].end());
  }
}

ConstraintSet ConstraintSet::from_pairs(std::vector<VertexId> universe, const std::vector<PairConstraint>& pairs) {
  std::vector<CapacityConstraint> constraints;
  constraints.reserve(pairs.size());
  for (const auto& [scope, k] : pairs) constraints.push_back({scope, k, {}});
  return ConstraintSet(std::move(universe), std::move(constraints));
}

bool ConstraintSet::in_universe(VertexId v) const {
  return std::binary_search(universe_.begin(), universe_.end(), v);
}

std::size_t ConstraintSet::index_of(VertexId v) const {
  auto it = std::lower_bound(universe_.begin(), universe_.end(), v);
  if (it == universe_.end() || *it != v) throw Error("vertex outside universe: " + std::to_string(v));
  return static_cast<std::size_t>(it - universe_.begin());
}

Weight ConstraintSet::weight_at(std::size_t vertex_index, std::size_t constraint) const {
  auto inc = incidence(vertex_index);
  auto it = std::lower_bound(inc.begin(), inc.end(), constraint,
                             [](const Incidence& a, std::size_t c) { return a.constraint < c; });
  return (it != inc.end() && it->constraint == constraint) ? it->weight : 0;
}

std::optional<std::size_t> ConstraintSet::first_violation(const VertexSet& u) const {
  std::vector<Weight> load(constraints_.size(), 0);
  for (auto v : u) {
    for (const auto& inc : incidence(index_of(v))) load[inc.constraint] += inc.weight;
  }
  for (std::size_t i = 0; i < load.size(); ++i) {
    if (load[i] > constraints_[i].capacity) return i;
  }
  return std::nullopt;
}

bool ConstraintSet::is_member(const VertexSet& u) const { return !first_violation(u).has_value(); }

ConstraintSet adjacency_constraints(const Digraph& g) {
  std::set<std::pair<VertexId, VertexId>> seen;
  std::vector<PairConstraint> pairs;
  for (const auto& [u, v] : g.edges()) {
    auto key = std::minmax(u, v);
    if (seen.insert(key).second) pairs.emplace_back(VertexSet{key.first, key.second}, 1);
  }
  return ConstraintSet::from_pairs(g.vertices(), pairs);
}

std::vector<PairConstraint> expand_covers(const CapacityConstraint& c) {
  c.validate();
  const auto& members = c.scope.members();
  const std::size_t s = members.size();
  if (s > 20) throw Error("cover expansion would be exponential");

  std::vector<Weight> w(s);
  for (std::size_t i = 0; i < s; ++i) w[i] = c.weight_of(members[i]);

  // A cover is minimal when dropping any single member brings it within capacity.
  std::vector<PairConstraint> covers;
  for (std::uint32_t mask = 1; mask < (1u << s); ++mask) {
    Weight total = 0;
    Weight lightest = 0;
    bool first = true;
    for (std::size_t i = 0; i < s; ++i) {
      if (!(mask >> i & 1u)) continue;
      total += w[i];
      if (first || w[i] < lightest) lightest = w[i];
      first = false;
    }
    if (total <= c.capacity || total - lightest > c.capacity) continue;
    std::vector<VertexId> cover;
    for (std::size_t i = 0; i < s; ++i)
      if (mask >> i & 1u) cover.push_back(members[i]);
    const auto size = static_cast<Weight>(cover.size());
    covers.emplace_back(VertexSet(std::move(cover)), size - 1);
  }
  std::sort(covers.begin(), covers.end());
  return covers;
}

bool verify_asc(const std::function<bool(const VertexSet&)>& family, const std::vector<VertexId>& universe,
                std::size_t universe_limit) {
  const std::size_t n = universe.size();
  if (n > universe_limit || n >= 31) throw Error("universe too large for subset enumeration");
  const std::uint32_t total = 1u << n;
  std::vector<char> member(total, 0);
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    std::vector<VertexId> ids;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1u) ids.push_back(universe[i]);
    member[mask] = family(VertexSet(std::move(ids))) ? 1 : 0;
  }
  if (!member[0]) return false;
  // Closure under removing one element implies closure under all subsets.
  for (std::uint32_t mask = 1; mask < total; ++mask) {
    if (!member[mask]) continue;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i & 1u) && !member[mask & ~(1u << i)]) return false;
    }
  }
  return true;
}

bool verify_asc(const ConstraintSet& c, std::size_t universe_limit) {
  return verify_asc([&c](const VertexSet& u) { return c.is_member(u); }, c.universe(), universe_limit);
}

OccupancyTracker::OccupancyTracker(const ConstraintSet& constraints)
    : constraints_(&constraints), totals_(constraints.size(), 0), occupied_(constraints.universe().size(), 0) {}

bool OccupancyTracker::try_add_index(std::uint32_t v) {
  if (!fits_index(v)) return false;
  for (const auto& inc : constraints_->incidence(v)) totals_[inc.constraint] += inc.weight;
  occupied_[v] = 1;
  return true;
}

void OccupancyTracker::remove_index(std::uint32_t v) {
  for (const auto& inc : constraints_->incidence(v)) totals_[inc.constraint] -= inc.weight;
  occupied_[v] = 0;
}

bool OccupancyTracker::check_swap_index(std::uint32_t drop_a, std::uint32_t drop_b, std::uint32_t probe) const {
  // Constraints not touching the probe can only lose load, so only the
  // probe's incidence list needs checking.
  for (const auto& inc : constraints_->incidence(probe)) {
    Weight load = totals_[inc.constraint] + inc.weight;
    if (drop_a != kNone) load -= constraints_->weight_at(drop_a, inc.constraint);
    if (drop_b != kNone && drop_b != drop_a) load -= constraints_->weight_at(drop_b, inc.constraint);
    if (load > constraints_->capacity(inc.constraint)) return false;
  }
  return true;
}

bool OccupancyTracker::add(VertexId v) {
  const auto i = static_cast<std::uint32_t>(constraints_->index_of(v));
  if (occupied_[i]) throw Error("occupancy state mismatch: vertex already occupied");
  return try_add_index(i);
}

void OccupancyTracker::remove(VertexId v) {
  const auto i = static_cast<std::uint32_t>(constraints_->index_of(v));
  if (!occupied_[i]) throw Error("occupancy state mismatch: vertex not occupied");
  remove_index(i);
}

bool OccupancyTracker::check_swap(std::span<const VertexId> drop, VertexId probe) const {
  if (drop.size() > 2) throw Error("occupancy state mismatch: at most two vertices may be dropped");
  std::uint32_t dropped[2] = {kNone, kNone};
  for (std::size_t i = 0; i < drop.size(); ++i) {
    dropped[i] = static_cast<std::uint32_t>(constraints_->index_of(drop[i]));
    if (!occupied_[dropped[i]]) throw Error("occupancy state mismatch: dropped vertex not occupied");
  }
  const auto p = static_cast<std::uint32_t>(constraints_->index_of(probe));
  if (occupied_[p] && p != dropped[0] && p != dropped[1])
    throw Error("occupancy state mismatch: probe already occupied");
  return check_swap_index(dropped[0], dropped[1], p);
}

VertexSet OccupancyTracker::members() const {
  std::vector<VertexId> ids;
  for (std::size_t i = 0; i < occupied_.size(); ++i)
    if (occupied_[i]) ids.push_back(constraints_->universe()[i]);
  return VertexSet(std::move(ids));
}

}  // namespace cmapf
