#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cmapf {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sorted, duplicate-free set of vertex ids.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<VertexId> ids);
  explicit VertexSet(std::vector<VertexId> ids);

  bool contains(VertexId v) const;
  bool insert(VertexId v);
  bool erase(VertexId v);

  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  const std::vector<VertexId>& members() const { return members_; }

  bool is_subset_of(const VertexSet& other) const;
  VertexSet united(const VertexSet& other) const;
  VertexSet minus(const VertexSet& other) const;
  VertexSet intersected(const VertexSet& other) const;

  std::string to_string(char separator = ',') const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend auto operator<=>(const VertexSet& a, const VertexSet& b) { return a.members_ <=> b.members_; }

 private:
  std::vector<VertexId> members_;
};

// Directed graph without self-loops. Vertex ids are arbitrary non-negative
// integers; internally every vertex also has a dense index in [0, n), assigned
// in increasing id order, and adjacency is stored in CSR form over indices.
class Digraph {
 public:
  Digraph() = default;
  Digraph(std::vector<VertexId> vertices, const std::vector<Edge>& edges);

  // Expands every pair into both directions.
  static Digraph undirected(std::vector<VertexId> vertices, const std::vector<Edge>& pairs);

  const std::vector<VertexId>& vertices() const { return ids_; }
  std::size_t vertex_count() const { return ids_.size(); }
  std::size_t edge_count() const { return out_targets_.size(); }
  bool empty() const { return ids_.empty(); }

  bool has_vertex(VertexId v) const;
  std::size_t index_of(VertexId v) const;  // throws "unknown vertex"
  VertexId id_at(std::size_t index) const { return ids_[index]; }

  bool has_edge(VertexId u, VertexId v) const;
  std::vector<Edge> edges() const;
  std::vector<VertexId> successors(VertexId v) const;
  std::vector<VertexId> predecessors(VertexId v) const;

  std::span<const std::uint32_t> out_indices(std::size_t index) const {
    return {out_targets_.data() + out_offsets_[index], out_targets_.data() + out_offsets_[index + 1]};
  }
  std::span<const std::uint32_t> in_indices(std::size_t index) const {
    return {in_sources_.data() + in_offsets_[index], in_sources_.data() + in_offsets_[index + 1]};
  }

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.ids_ == b.ids_ && a.out_offsets_ == b.out_offsets_ && a.out_targets_ == b.out_targets_;
  }

 private:
  std::vector<VertexId> ids_;
  std::vector<std::uint32_t> out_offsets_{0};
  std::vector<std::uint32_t> out_targets_;
  std::vector<std::uint32_t> in_offsets_{0};
  std::vector<std::uint32_t> in_sources_;
};

using VertexPredicate = std::function<bool(VertexId)>;

// Throws "empty graph" on a graph without vertices.
bool is_strongly_connected(const Digraph& g);

// G/v: drop v, keep edges disjoint from v, bridge every u -> v -> w into u -> w.
Digraph contract(const Digraph& g, VertexId v);

// Directed path from `from` to `to` through vertices admitted by `allowed`.
bool reachable(const Digraph& g, VertexId from, VertexId to, const VertexPredicate& allowed);

// n x n lattice, ids 1..n*n row-major, each adjacency in both directions.
Digraph grid_graph(std::size_t n);

}  // namespace cmapf
