#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "cmapf/constraints.hpp"
#include "cmapf/graph.hpp"

namespace cmapf {

// Selects the serial reference path or the OpenMP kernel.
enum class Execution { serial, parallel };

// Reduced digraph G_W together with one witness path ("lift") per edge.
class ReducedGraph {
 public:
  ReducedGraph() = default;
  ReducedGraph(VertexSet w, std::map<Edge, std::vector<VertexId>> lifts);

  const VertexSet& w() const { return w_; }
  std::vector<Edge> edges() const;
  std::size_t edge_count() const { return lifts_.size(); }
  bool has_edge(VertexId u, VertexId v) const { return lifts_.count({u, v}) != 0; }
  // Witness path from u to v in the original graph, endpoints included.
  const std::vector<VertexId>& lift(VertexId u, VertexId v) const;
  const std::map<Edge, std::vector<VertexId>>& lifts() const { return lifts_; }

  Digraph as_digraph() const;

  friend bool operator==(const ReducedGraph&, const ReducedGraph&) = default;

 private:
  VertexSet w_;
  std::map<Edge, std::vector<VertexId>> lifts_;
};

// Admits exactly the vertices of G_W^{v1 v2}. The returned predicate keeps a
// reference to `c`, which must outlive it.
VertexPredicate filtered_vertices(const Digraph& g, const ConstraintSet& c, const VertexSet& w, VertexId v1,
                                  VertexId v2);

ReducedGraph build_reduced(const Digraph& g, const ConstraintSet& c, const VertexSet& w,
                           Execution exec = Execution::parallel);

// Empty set is independent; otherwise w must be a member of c and G_W
// strongly connected. Edges are evaluated lazily with early exit.
bool is_independent(const Digraph& g, const ConstraintSet& c, const VertexSet& w);

// Throws unless the constraint universe coincides with the graph's vertices,
// which makes dense indices interchangeable between the two.
void require_shared_universe(const Digraph& g, const ConstraintSet& c);

// Dense-index pair reachability over a fixed (graph, constraints) pair. Holds
// scratch buffers, so one engine per thread.
class ReachEngine {
 public:
  ReachEngine(const Digraph& g, const ConstraintSet& c);

  // Path a -> b whose interior avoids W and keeps (W \ {a,b}) + {x} in C.
  // `tracker` must hold exactly W and `in_w` be its indicator.
  bool find_path(const OccupancyTracker& tracker, const std::vector<char>& in_w, std::uint32_t a, std::uint32_t b,
                 std::vector<std::uint32_t>* witness = nullptr);

  bool strongly_connected(const OccupancyTracker& tracker, const std::vector<char>& in_w,
                          std::span<const std::uint32_t> members);

 private:
  const Digraph* graph_;
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> queue_;
  std::uint32_t epoch_ = 0;
};

}  // namespace cmapf
