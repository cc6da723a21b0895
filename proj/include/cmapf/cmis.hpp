#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <vector>

#include "cmapf/constraints.hpp"
#include "cmapf/graph.hpp"
#include "cmapf/reduction.hpp"

namespace cmapf {

struct CmisInstance {
  Digraph graph;
  ConstraintSet constraints;
  VertexSet seed;
};

// How the growth loop picks the next candidate from the open set. Greedy rules
// break ties towards the lowest vertex id. The random rule draws from
// std::mt19937_64 seeded with `seed` using rejection sampling, so streams are
// reproducible across standard libraries.
struct SelectionRule {
  enum class Kind { random, greedy_psi, greedy_degree };

  Kind kind = Kind::greedy_degree;
  std::uint64_t seed = 0;

  static SelectionRule random(std::uint64_t seed) { return {Kind::random, seed}; }
  static SelectionRule greedy_psi() { return {Kind::greedy_psi, 0}; }
  static SelectionRule greedy_degree() { return {Kind::greedy_degree, 0}; }
};

// Grows the seed to a maximal independent set. Throws "infeasible seed" when
// the seed itself is not independent.
VertexSet maximal_independent(const CmisInstance& inst, const SelectionRule& rule);

// |{w not in M + {v} : M + {v, w} in C}|
std::size_t psi_expandability(VertexId v, const VertexSet& m, const ConstraintSet& c);

// 1 / deg of v in g minus `excluded`, neighbours counted once regardless of
// direction; +infinity for an isolated vertex.
double psi_inverse_degree(VertexId v, const VertexSet& excluded, const Digraph& g);

struct ExactOptions {
  std::chrono::milliseconds budget{std::chrono::minutes(10)};
  // Collect every maximum-cardinality solution instead of one.
  bool enumerate_all = false;
};

struct ExactResult {
  VertexSet best;
  bool proven_optimal = false;
  std::vector<VertexSet> optima;  // sorted; only filled with enumerate_all
  std::uint64_t nodes = 0;
};

// Branch and bound over vertex inclusion. A candidate that fails against M is
// dropped for the whole subtree (independence is hereditary); the bound adds a
// greedy clique cover of the pairwise-conflict graph among survivors.
ExactResult exact_cmis(const CmisInstance& inst, const ExactOptions& options = {});

struct RestartResult {
  VertexSet best;
  std::size_t best_run = 0;
  std::vector<VertexSet> runs;                       // indexed by run
  std::map<std::size_t, std::size_t> histogram;      // cardinality -> count
};

// Random-rule runs with seeds base_seed + i; best is the largest set, ties to
// the lowest run index.
RestartResult multi_restart(const CmisInstance& inst, std::size_t runs, std::uint64_t base_seed,
                            Execution exec = Execution::parallel);

}  // namespace cmapf
