#include "cmapf/cmis.hpp"

#include <algorithm>
#include <limits>
#include <random>

namespace cmapf {

namespace {

std::size_t draw_index(std::mt19937_64& gen, std::size_t n) {
  const std::uint64_t bound = n;
  const std::uint64_t threshold = (0 - bound) % bound;
  std::uint64_t r;
  do {
    r = gen();
  } while (r < threshold);
  return static_cast<std::size_t>(r % bound);
}

// Mutable search state in dense indices: M, its tracker and indicator.
struct GrowState {
  GrowState(const Digraph& g, const ConstraintSet& c) : tracker(c), in_m(g.vertex_count(), 0), engine(g, c) {}

  bool push(std::uint32_t v) {
    if (!tracker.try_add_index(v)) return false;
    in_m[v] = 1;
    members.push_back(v);
    return true;
  }
  void pop() {
    const auto v = members.back();
    members.pop_back();
    in_m[v] = 0;
    tracker.remove_index(v);
  }
  bool independent() { return engine.strongly_connected(tracker, in_m, members); }
  // Tentatively add v and test independence; leaves M unchanged.
  bool extends(std::uint32_t v) {
    if (!push(v)) return false;
    const bool ok = independent();
    pop();
    return ok;
  }

  VertexSet as_set(const Digraph& g) const {
    std::vector<VertexId> ids;
    for (auto i : members) ids.push_back(g.id_at(i));
    return VertexSet(std::move(ids));
  }

  OccupancyTracker tracker;
  std::vector<char> in_m;
  std::vector<std::uint32_t> members;
  ReachEngine engine;
};

void load_seed(GrowState& state, const CmisInstance& inst) {
  for (auto v : inst.seed) {
    if (!inst.graph.has_vertex(v) || !state.push(static_cast<std::uint32_t>(inst.graph.index_of(v))))
      throw Error("infeasible seed");
  }
  if (!state.independent()) throw Error("infeasible seed");
}

std::size_t open_degree(const Digraph& g, std::uint32_t v, const std::vector<char>& excluded,
                        std::vector<std::uint32_t>& scratch) {
  scratch.clear();
  for (auto w : g.out_indices(v))
    if (!excluded[w]) scratch.push_back(w);
  for (auto w : g.in_indices(v))
    if (!excluded[w]) scratch.push_back(w);
  std::sort(scratch.begin(), scratch.end());
  return static_cast<std::size_t>(std::unique(scratch.begin(), scratch.end()) - scratch.begin());
}

}  // namespace

VertexSet maximal_independent(const CmisInstance& inst, const SelectionRule& rule) {
  const auto& g = inst.graph;
  const auto& c = inst.constraints;
  require_shared_universe(g, c);
  const auto n = static_cast<std::uint32_t>(g.vertex_count());

  GrowState state(g, c);
  load_seed(state, inst);

  // excluded plays the role of the set E = M + L(M) + rejected candidates.
  std::vector<char> excluded(n, 0);
  auto refresh_locked = [&] {
    for (std::uint32_t x = 0; x < n; ++x)
      if (!excluded[x] && (state.in_m[x] || !state.tracker.fits_index(x))) excluded[x] = 1;
  };
  refresh_locked();
  std::vector<std::uint32_t> open;
  for (std::uint32_t x = 0; x < n; ++x)
    if (!excluded[x]) open.push_back(x);

  std::mt19937_64 gen(rule.seed);
  std::vector<std::uint32_t> scratch;

  auto select = [&]() -> std::uint32_t {
    switch (rule.kind) {
      case SelectionRule::Kind::random:
        return open[draw_index(gen, open.size())];
      case SelectionRule::Kind::greedy_degree: {
        // argmax 1/deg == argmin deg, with deg 0 mapped to +infinity.
        std::uint32_t pick = open.front();
        std::size_t best = std::numeric_limits<std::size_t>::max();
        for (auto v : open) {
          const auto d = open_degree(g, v, excluded, scratch);
          if (d < best) {
            best = d;
            pick = v;
          }
        }
        return pick;
      }
      case SelectionRule::Kind::greedy_psi: {
        std::uint32_t pick = open.front();
        std::size_t best = 0;
        bool first = true;
        for (auto v : open) {
          state.tracker.try_add_index(v);
          std::size_t psi = 0;
          for (std::uint32_t w = 0; w < n; ++w)
            if (!state.in_m[w] && w != v && state.tracker.fits_index(w)) ++psi;
          state.tracker.remove_index(v);
          if (first || psi > best) {
            best = psi;
            pick = v;
            first = false;
          }
        }
        return pick;
      }
    }
    return open.front();
  };

  while (!open.empty()) {
    const auto v = select();
    state.push(v);
    if (state.independent()) {
      refresh_locked();
    } else {
      state.pop();
    }
    excluded[v] = 1;
    std::erase_if(open, [&](std::uint32_t x) { return excluded[x] != 0; });
  }
  return state.as_set(g);
}

std::size_t psi_expandability(VertexId v, const VertexSet& m, const ConstraintSet& c) {
  OccupancyTracker tracker(c);
  for (auto x : m)
    if (!tracker.add(x)) throw Error("M is not a member of C");
  if (!m.contains(v) && !tracker.add(v)) throw Error("M + {v} is not a member of C");
  std::size_t count = 0;
  for (auto w : c.universe()) {
    if (w == v || m.contains(w)) continue;
    if (tracker.check_swap({}, w)) ++count;
  }
  return count;
}

double psi_inverse_degree(VertexId v, const VertexSet& excluded, const Digraph& g) {
  if (excluded.contains(v)) throw Error("vertex is excluded");
  std::vector<char> mask(g.vertex_count(), 0);
  for (auto x : excluded)
    if (g.has_vertex(x)) mask[g.index_of(x)] = 1;
  std::vector<std::uint32_t> scratch;
  const auto d = open_degree(g, static_cast<std::uint32_t>(g.index_of(v)), mask, scratch);
  return d == 0 ? std::numeric_limits<double>::infinity() : 1.0 / static_cast<double>(d);
}

namespace {

class BranchAndBound {
 public:
  BranchAndBound(const CmisInstance& inst, const ExactOptions& options)
      : inst_(inst), options_(options), state_(inst.graph, inst.constraints),
        deadline_(std::chrono::steady_clock::now() + options.budget) {}

  ExactResult run() {
    load_seed(state_, inst_);
    std::vector<std::uint32_t> candidates;
    for (std::uint32_t x = 0; x < inst_.graph.vertex_count(); ++x)
      if (!state_.in_m[x]) candidates.push_back(x);
    best_ = state_.as_set(inst_.graph);
    if (options_.enumerate_all) optima_.push_back(best_);
    expand(candidates);

    ExactResult out;
    out.best = best_;
    out.proven_optimal = !timed_out_;
    out.nodes = nodes_;
    if (options_.enumerate_all) {
      std::sort(optima_.begin(), optima_.end());
      out.optima = std::move(optima_);
    }
    return out;
  }

 private:
  void record() {
    const auto size = state_.members.size();
    if (size > best_.size()) {
      best_ = state_.as_set(inst_.graph);
      optima_.clear();
      if (options_.enumerate_all) optima_.push_back(best_);
    } else if (options_.enumerate_all && size == best_.size()) {
      optima_.push_back(state_.as_set(inst_.graph));
    }
  }

  bool conflict(std::uint32_t a, std::uint32_t b) {
    if (!state_.tracker.try_add_index(a)) return true;
    const bool ok = state_.tracker.fits_index(b);
    state_.tracker.remove_index(a);
    return !ok;
  }

  // suffix[i] bounds how many of viable[i..] can join M together.
  std::vector<std::size_t> suffix_cover(const std::vector<std::uint32_t>& viable) {
    std::vector<std::size_t> suffix(viable.size() + 1, 0);
    std::vector<std::vector<std::uint32_t>> cliques;
    for (std::size_t i = viable.size(); i-- > 0;) {
      const auto v = viable[i];
      bool placed = false;
      for (auto& clique : cliques) {
        if (std::all_of(clique.begin(), clique.end(), [&](std::uint32_t u) { return conflict(u, v); })) {
          clique.push_back(v);
          placed = true;
          break;
        }
      }
      if (!placed) cliques.push_back({v});
      suffix[i] = cliques.size();
    }
    return suffix;
  }

  bool hopeless(std::size_t bound) const {
    return options_.enumerate_all ? bound < best_.size() : bound <= best_.size();
  }

  void expand(const std::vector<std::uint32_t>& candidates) {
    ++nodes_;
    if ((nodes_ & 63) == 0 && std::chrono::steady_clock::now() > deadline_) timed_out_ = true;
    if (timed_out_) return;

    std::vector<std::uint32_t> viable;
    for (auto v : candidates)
      if (state_.extends(v)) viable.push_back(v);
    if (viable.empty()) return;

    const auto suffix = suffix_cover(viable);
    for (std::size_t i = 0; i < viable.size(); ++i) {
      if (timed_out_) return;
      if (hopeless(state_.members.size() + suffix[i])) return;
      state_.push(viable[i]);
      record();
      std::vector<std::uint32_t> next;
      for (std::size_t j = i + 1; j < viable.size(); ++j)
        if (state_.tracker.fits_index(viable[j])) next.push_back(viable[j]);
      if (!next.empty()) expand(next);
      state_.pop();
    }
  }

  const CmisInstance& inst_;
  ExactOptions options_;
  GrowState state_;
  std::chrono::steady_clock::time_point deadline_;
  VertexSet best_;
  std::vector<VertexSet> optima_;
  std::uint64_t nodes_ = 0;
  bool timed_out_ = false;
};

}  // namespace

ExactResult exact_cmis(const CmisInstance& inst, const ExactOptions& options) {
  require_shared_universe(inst.graph, inst.constraints);
  return BranchAndBound(inst, options).run();
}

RestartResult multi_restart(const CmisInstance& inst, std::size_t runs, std::uint64_t base_seed, Execution exec) {
  if (runs == 0) throw Error("runs must be positive");
  if (!is_independent(inst.graph, inst.constraints, inst.seed)) throw Error("infeasible seed");

  RestartResult out;
  out.runs.resize(runs);
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < runs; ++i)
      out.runs[i] = maximal_independent(inst, SelectionRule::random(base_seed + i));
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(runs); ++i)
      out.runs[i] = maximal_independent(inst, SelectionRule::random(base_seed + static_cast<std::uint64_t>(i)));
  }

  for (std::size_t i = 0; i < runs; ++i) {
    ++out.histogram[out.runs[i].size()];
    if (i == 0 || out.runs[i].size() > out.best.size()) {
      out.best = out.runs[i];
      out.best_run = i;
    }
  }
  return out;
}

}  // namespace cmapf
