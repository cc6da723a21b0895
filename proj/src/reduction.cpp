#include "cmapf/reduction.hpp"

#include <algorithm>
#include <memory>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cmapf {

ReducedGraph::ReducedGraph(VertexSet w, std::map<Edge, std::vector<VertexId>> lifts)
    : w_(std::move(w)), lifts_(std::move(lifts)) {}

std::vector<Edge> ReducedGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(lifts_.size());
  for (const auto& [e, path] : lifts_) out.push_back(e);
  return out;
}

const std::vector<VertexId>& ReducedGraph::lift(VertexId u, VertexId v) const {
  auto it = lifts_.find({u, v});
  if (it == lifts_.end())
    throw Error("(" + std::to_string(u) + "," + std::to_string(v) + ") is not an edge of the reduced graph");
  return it->second;
}

Digraph ReducedGraph::as_digraph() const { return Digraph(w_.members(), edges()); }

void require_shared_universe(const Digraph& g, const ConstraintSet& c) {
  if (g.vertices() != c.universe()) throw Error("constraint universe differs from graph vertices");
}

namespace {

// Tracker loaded with w plus its indicator; throws when w is not a member.
struct LoadedSet {
  std::unique_ptr<OccupancyTracker> tracker;
  std::vector<char> in_w;
  std::vector<std::uint32_t> members;
};

LoadedSet load(const Digraph& g, const ConstraintSet& c, const VertexSet& w) {
  require_shared_universe(g, c);
  LoadedSet out{std::make_unique<OccupancyTracker>(c), std::vector<char>(g.vertex_count(), 0), {}};
  for (auto v : w) {
    const auto i = static_cast<std::uint32_t>(g.index_of(v));
    if (!out.tracker->try_add_index(i)) throw Error("seed set violates constraints");
    out.in_w[i] = 1;
    out.members.push_back(i);
  }
  return out;
}

std::vector<VertexId> to_ids(const Digraph& g, const std::vector<std::uint32_t>& path) {
  std::vector<VertexId> ids;
  ids.reserve(path.size());
  for (auto i : path) ids.push_back(g.id_at(i));
  return ids;
}

}  // namespace

VertexPredicate filtered_vertices(const Digraph& g, const ConstraintSet& c, const VertexSet& w, VertexId v1,
                                  VertexId v2) {
  if (!w.contains(v1) || !w.contains(v2)) throw Error("filter endpoints must belong to W");
  auto loaded = std::make_shared<LoadedSet>(load(g, c, w));
  const auto a = static_cast<std::uint32_t>(c.index_of(v1));
  const auto b = static_cast<std::uint32_t>(c.index_of(v2));
  const ConstraintSet* cs = &c;
  return [loaded, a, b, cs](VertexId x) {
    if (!cs->in_universe(x)) return false;
    const auto i = static_cast<std::uint32_t>(cs->index_of(x));
    if (i == a || i == b) return true;
    if (loaded->in_w[i]) return false;
    return loaded->tracker->check_swap_index(a, b, i);
  };
}

ReachEngine::ReachEngine(const Digraph& g, const ConstraintSet& c)
    : graph_(&g), stamp_(g.vertex_count(), 0), parent_(g.vertex_count(), 0) {
  require_shared_universe(g, c);
  queue_.reserve(g.vertex_count());
}

bool ReachEngine::find_path(const OccupancyTracker& tracker, const std::vector<char>& in_w, std::uint32_t a,
                            std::uint32_t b, std::vector<std::uint32_t>* witness) {
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  auto finish = [&](std::uint32_t last) {
    if (!witness) return;
    witness->clear();
    for (auto v = last; v != a; v = parent_[v]) witness->push_back(v);
    witness->push_back(a);
    std::reverse(witness->begin(), witness->end());
  };
  if (a == b) {
    finish(a);
    return true;
  }
  queue_.clear();
  queue_.push_back(a);
  stamp_[a] = epoch_;
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    const auto u = queue_[head];
    for (auto x : graph_->out_indices(u)) {
      if (stamp_[x] == epoch_) continue;
      if (x == b) {
        parent_[x] = u;
        finish(b);
        return true;
      }
      stamp_[x] = epoch_;
      if (in_w[x] || !tracker.check_swap_index(a, b, x)) continue;
      parent_[x] = u;
      queue_.push_back(x);
    }
  }
  return false;
}

bool ReachEngine::strongly_connected(const OccupancyTracker& tracker, const std::vector<char>& in_w,
                                     std::span<const std::uint32_t> members) {
  const std::size_t k = members.size();
  if (k <= 1) return true;
  for (int direction = 0; direction < 2; ++direction) {
    std::vector<char> reached(k, 0);
    std::vector<std::size_t> frontier{0};
    reached[0] = 1;
    std::size_t count = 1;
    while (!frontier.empty()) {
      const auto u = frontier.back();
      frontier.pop_back();
      for (std::size_t v = 0; v < k; ++v) {
        if (reached[v]) continue;
        const bool edge = direction == 0 ? find_path(tracker, in_w, members[u], members[v])
                                         : find_path(tracker, in_w, members[v], members[u]);
        if (edge) {
          reached[v] = 1;
          ++count;
          frontier.push_back(v);
        }
      }
    }
    if (count != k) return false;
  }
  return true;
}

ReducedGraph build_reduced(const Digraph& g, const ConstraintSet& c, const VertexSet& w, Execution exec) {
  if (w.empty()) throw Error("reduced graph needs a non-empty W");
  for (auto v : w)
    if (!g.has_vertex(v)) throw Error("unknown vertex " + std::to_string(v));
  const auto loaded = load(g, c, w);

  const auto& members = loaded.members;
  const std::size_t k = members.size();
  const std::size_t pair_count = k * k;
  std::vector<std::vector<std::uint32_t>> witnesses(pair_count);
  std::vector<char> found(pair_count, 0);

  if (exec == Execution::serial) {
    ReachEngine engine(g, c);
    for (std::size_t p = 0; p < pair_count; ++p) {
      const auto i = p / k, j = p % k;
      if (i == j) continue;
      found[p] = engine.find_path(*loaded.tracker, loaded.in_w, members[i], members[j], &witnesses[p]);
    }
  } else {
#pragma omp parallel
    {
      ReachEngine engine(g, c);
#pragma omp for schedule(dynamic, 16)
      for (std::int64_t p = 0; p < static_cast<std::int64_t>(pair_count); ++p) {
        const auto i = static_cast<std::size_t>(p) / k, j = static_cast<std::size_t>(p) % k;
        if (i == j) continue;
        found[p] = engine.find_path(*loaded.tracker, loaded.in_w, members[i], members[j], &witnesses[p]);
      }
    }
  }

  std::map<Edge, std::vector<VertexId>> lifts;
  for (std::size_t p = 0; p < pair_count; ++p) {
    if (!found[p]) continue;
    const auto i = p / k, j = p % k;
    lifts.emplace(Edge{g.id_at(members[i]), g.id_at(members[j])}, to_ids(g, witnesses[p]));
  }
  return ReducedGraph(w, std::move(lifts));
}

bool is_independent(const Digraph& g, const ConstraintSet& c, const VertexSet& w) {
  if (w.empty()) return true;
  require_shared_universe(g, c);
  for (auto v : w)
    if (!g.has_vertex(v)) return false;
  if (!c.is_member(w)) return false;
  const auto loaded = load(g, c, w);
  ReachEngine engine(g, c);
  return engine.strongly_connected(*loaded.tracker, loaded.in_w, loaded.members);
}

}  // namespace cmapf
