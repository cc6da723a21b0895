#pragma once

// Paper fixtures and brute-force oracles shared by the test binaries. The
// oracles work on plain containers and never call the library's search code.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "cmapf/cmis.hpp"
#include "cmapf/constraints.hpp"
#include "cmapf/gadgets.hpp"
#include "cmapf/graph.hpp"
#include "cmapf/planner.hpp"

namespace fixtures {

using namespace cmapf;

// The directed 5-cycle D with C = {({1,4},1), ({2,3},1)}.
inline Digraph graph_d() { return Digraph({1, 2, 3, 4, 5}, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}}); }
// D': D plus the chord 3 -> 5.
inline Digraph graph_d_prime() {
  return Digraph({1, 2, 3, 4, 5}, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}, {3, 5}});
}
inline ConstraintSet constraints_d() {
  return ConstraintSet::from_pairs({1, 2, 3, 4, 5}, {{VertexSet{1, 4}, 1}, {VertexSet{2, 3}, 1}});
}

// Non-matroid fixture: graph and its six pair constraints.
inline Digraph graph_nonmatroid() {
  return Digraph({1, 2, 3, 4, 5, 6, 7}, {{1, 7}, {7, 4}, {2, 3}, {1, 2}, {3, 4}, {4, 5}, {6, 1}, {5, 6}});
}
inline ConstraintSet constraints_nonmatroid() {
  return ConstraintSet::from_pairs({1, 2, 3, 4, 5, 6, 7}, {{VertexSet{1, 2}, 1},
                                                           {VertexSet{2, 3}, 1},
                                                           {VertexSet{3, 4}, 1},
                                                           {VertexSet{4, 5}, 1},
                                                           {VertexSet{5, 6}, 1},
                                                           {VertexSet{6, 1}, 1}});
}

// Undirected MIS fixture on 5 vertices.
inline Digraph graph_mis5() { return Digraph::undirected({1, 2, 3, 4, 5}, {{1, 2}, {4, 3}, {1, 4}, {4, 5}, {2, 5}, {2, 3}}); }

inline CnfFormula sat_formula() {
  return {3, {{{1, true}, {2, false}}, {{3, true}}, {{1, false}, {2, true}, {3, false}}}};
}

}  // namespace fixtures

namespace oracle {

using cmapf::CapacityConstraint;
using cmapf::VertexId;
using Set = std::set<VertexId>;
using EdgeSet = std::set<std::pair<VertexId, VertexId>>;

inline bool member(const std::vector<CapacityConstraint>& cs, const Set& u) {
  for (const auto& c : cs) {
    cmapf::Weight total = 0;
    for (auto v : u)
      if (c.scope.contains(v)) total += c.weights.count(v) ? c.weights.at(v) : 1;
    if (total > c.capacity) return false;
  }
  return true;
}

inline bool reach(const EdgeSet& edges, VertexId from, VertexId to, const std::function<bool(VertexId)>& allowed) {
  Set seen{from};
  std::vector<VertexId> stack{from};
  while (!stack.empty()) {
    const auto u = stack.back();
    stack.pop_back();
    if (u == to) return true;
    for (const auto& [a, b] : edges)
      if (a == u && allowed(b) && seen.insert(b).second) stack.push_back(b);
  }
  return false;
}

// Edge set of the reduced graph straight from the definition.
inline EdgeSet reduced_edges(const EdgeSet& edges, const std::vector<CapacityConstraint>& cs, const Set& w) {
  EdgeSet out;
  for (auto u : w)
    for (auto v : w) {
      if (u == v) continue;
      Set rest = w;
      rest.erase(u);
      rest.erase(v);
      auto allowed = [&](VertexId x) {
        if (x == u || x == v) return true;
        if (w.count(x)) return false;
        Set probe = rest;
        probe.insert(x);
        return member(cs, probe);
      };
      if (reach(edges, u, v, allowed)) out.insert({u, v});
    }
  return out;
}

inline bool strongly_connected(const Set& nodes, const EdgeSet& edges) {
  if (nodes.empty()) return true;
  const auto root = *nodes.begin();
  auto all = [](VertexId) { return true; };
  for (auto v : nodes)
    if (!reach(edges, root, v, all) || !reach(edges, v, root, all)) return false;
  return true;
}

inline bool independent(const EdgeSet& edges, const std::vector<CapacityConstraint>& cs, const Set& w) {
  if (w.empty()) return true;
  if (!member(cs, w)) return false;
  return strongly_connected(w, reduced_edges(edges, cs, w));
}

inline EdgeSet edge_set(const cmapf::Digraph& g) {
  const auto e = g.edges();
  return EdgeSet(e.begin(), e.end());
}

inline Set to_set(const cmapf::VertexSet& v) { return Set(v.begin(), v.end()); }

struct MaxResult {
  std::size_t size = 0;
  std::vector<Set> optima;
};

// Largest independent supersets of `seed`, by enumerating every subset.
inline MaxResult max_independent(const cmapf::Digraph& g, const cmapf::ConstraintSet& c, const Set& seed = {}) {
  const auto& ids = g.vertices();
  const auto edges = edge_set(g);
  MaxResult out;
  bool any = false;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ids.size()); ++mask) {
    Set s;
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (mask >> i & 1) s.insert(ids[i]);
    if (!std::includes(s.begin(), s.end(), seed.begin(), seed.end())) continue;
    if (any && s.size() < out.size) continue;
    if (!independent(edges, c.constraints(), s)) continue;
    if (!any || s.size() > out.size) {
      out.size = s.size();
      out.optima.clear();
      any = true;
    }
    out.optima.push_back(s);
  }
  std::sort(out.optima.begin(), out.optima.end());
  return out;
}

// Classical maximum independent set size of an undirected graph.
inline std::size_t classical_mis(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::size_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool ok = true;
    for (const auto& [a, b] : edges)
      if ((mask >> a & 1) && (mask >> b & 1)) ok = false;
    if (ok) best = std::max<std::size_t>(best, __builtin_popcountll(mask));
  }
  return best;
}

inline bool satisfiable(const cmapf::CnfFormula& f) {
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << f.variable_count); ++mask) {
    std::vector<bool> a(f.variable_count);
    for (std::uint32_t i = 0; i < f.variable_count; ++i) a[i] = mask >> i & 1;
    bool all = true;
    for (const auto& clause : f.clauses) {
      bool any = false;
      for (const auto& lit : clause) any = any || a[lit.variable - 1] == lit.positive;
      all = all && any;
    }
    if (all) return true;
  }
  return false;
}

}  // namespace oracle

namespace gen {

using namespace cmapf;

// Hamiltonian cycle over a shuffled order plus `extra` random chords.
inline Digraph strongly_connected_graph(std::mt19937_64& rng, std::size_t n, std::size_t extra) {
  std::vector<VertexId> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<VertexId>(i + 1);
  auto order = ids;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n && n > 1; ++i) edges.emplace_back(order[i], order[(i + 1) % n]);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t k = 0; k < extra && n > 1; ++k) {
    const auto a = ids[pick(rng)], b = ids[pick(rng)];
    if (a != b) edges.emplace_back(a, b);
  }
  return Digraph(ids, edges);
}

inline ConstraintSet random_pairs(std::mt19937_64& rng, const Digraph& g, std::size_t count) {
  const auto& ids = g.vertices();
  std::uniform_int_distribution<std::size_t> pick(0, ids.size() - 1);
  std::vector<PairConstraint> pairs;
  for (std::size_t k = 0; k < count && ids.size() > 1; ++k) {
    const auto a = ids[pick(rng)], b = ids[pick(rng)];
    if (a != b) pairs.push_back({VertexSet{a, b}, 1});
  }
  return ConstraintSet::from_pairs(ids, pairs);
}

// Random knapsack constraint over `scope_size` ids starting at 1.
inline CapacityConstraint random_knapsack(std::mt19937_64& rng, std::size_t scope_size) {
  CapacityConstraint c;
  std::vector<VertexId> scope;
  std::uniform_int_distribution<Weight> weight(1, 4);
  Weight total = 0;
  for (std::size_t i = 0; i < scope_size; ++i) {
    scope.push_back(static_cast<VertexId>(i + 1));
    const auto w = weight(rng);
    c.weights[scope.back()] = w;
    total += w;
  }
  c.scope = VertexSet(scope);
  c.capacity = std::uniform_int_distribution<Weight>(0, total)(rng);
  return c;
}

inline VertexSet random_subset(std::mt19937_64& rng, const std::vector<VertexId>& ids, double p) {
  std::bernoulli_distribution in(p);
  std::vector<VertexId> out;
  for (auto v : ids)
    if (in(rng)) out.push_back(v);
  return VertexSet(out);
}

}  // namespace gen
