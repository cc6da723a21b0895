#include "cmapf/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace cmapf {

VertexSet::VertexSet(std::initializer_list<VertexId> ids) : VertexSet(std::vector<VertexId>(ids)) {}

VertexSet::VertexSet(std::vector<VertexId> ids) : members_(std::move(ids)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool VertexSet::contains(VertexId v) const { return std::binary_search(members_.begin(), members_.end(), v); }

bool VertexSet::insert(VertexId v) {
  auto it = std::lower_bound(members_.begin(), members_.end(), v);
  if (it != members_.end() && *it == v) return false;
  members_.insert(it, v);
  return true;
}

bool VertexSet::erase(VertexId v) {
  auto it = std::lower_bound(members_.begin(), members_.end(), v);
  if (it == members_.end() || *it != v) return false;
  members_.erase(it);
  return true;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
}

VertexSet VertexSet::united(const VertexSet& other) const {
  VertexSet out;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                 std::back_inserter(out.members_));
  return out;
}

VertexSet VertexSet::minus(const VertexSet& other) const {
  VertexSet out;
  std::set_difference(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                      std::back_inserter(out.members_));
  return out;
}

VertexSet VertexSet::intersected(const VertexSet& other) const {
  VertexSet out;
  std::set_intersection(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                        std::back_inserter(out.members_));
  return out;
}

std::string VertexSet::to_string(char separator) const {
  std::ostringstream os;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) os << separator;
    os << members_[i];
  }
  return os.str();
}

Digraph::Digraph(std::vector<VertexId> vertices, const std::vector<Edge>& edges) : ids_(std::move(vertices)) {
  std::sort(ids_.begin(), ids_.end());
  if (std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end()) throw Error("duplicate vertex id");

  std::vector<std::pair<std::uint32_t, std::uint32_t>> dense;
  dense.reserve(edges.size());
  for (const auto& [u, v] : edges) {
    if (u == v) throw Error("self-loop on vertex " + std::to_string(u));
    if (!has_vertex(u) || !has_vertex(v)) throw Error("edge endpoint is not a vertex");
    dense.emplace_back(static_cast<std::uint32_t>(index_of(u)), static_cast<std::uint32_t>(index_of(v)));
  }
  std::sort(dense.begin(), dense.end());
  dense.erase(std::unique(dense.begin(), dense.end()), dense.end());

  const std::size_t n = ids_.size();
  out_offsets_.assign(n + 1, 0);
  in_offsets_.assign(n + 1, 0);
  for (const auto& [u, v] : dense) {
    ++out_offsets_[u + 1];
    ++in_offsets_[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) {
    out_offsets_[i + 1] += out_offsets_[i];
    in_offsets_[i + 1] += in_offsets_[i];
  }
  out_targets_.resize(dense.size());
  in_sources_.resize(dense.size());
  std::vector<std::uint32_t> out_fill(out_offsets_.begin(), out_offsets_.end() - 1);
  std::vector<std::uint32_t> in_fill(in_offsets_.begin(), in_offsets_.end() - 1);
  for (const auto& [u, v] : dense) {
    out_targets_[out_fill[u]++] = v;
    in_sources_[in_fill[v]++] = u;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(in_sources_.begin() + in_offsets_[i], in_sources_.begin() + in_offsets_[i + 1]);
  }
}

Digraph Digraph::undirected(std::vector<VertexId> vertices, const std::vector<Edge>& pairs) {
  std::vector<Edge> both;
  both.reserve(pairs.size() * 2);
  for (const auto& [u, v] : pairs) {
    both.emplace_back(u, v);
    both.emplace_back(v, u);
  }
  return Digraph(std::move(vertices), both);
}

bool Digraph::has_vertex(VertexId v) const { return std::binary_search(ids_.begin(), ids_.end(), v); }

std::size_t Digraph::index_of(VertexId v) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
  if (it == ids_.end() || *it != v) throw Error("unknown vertex " + std::to_string(v));
  return static_cast<std::size_t>(it - ids_.begin());
}

bool Digraph::has_edge(VertexId u, VertexId v) const {
  if (!has_vertex(u) || !has_vertex(v)) return false;
  auto out = out_indices(index_of(u));
  return std::binary_search(out.begin(), out.end(), static_cast<std::uint32_t>(index_of(v)));
}

std::vector<Edge> Digraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (std::size_t u = 0; u < ids_.size(); ++u) {
    for (auto v : out_indices(u)) out.emplace_back(ids_[u], ids_[v]);
  }
  return out;
}

std::vector<VertexId> Digraph::successors(VertexId v) const {
  std::vector<VertexId> out;
  for (auto w : out_indices(index_of(v))) out.push_back(ids_[w]);
  return out;
}

std::vector<VertexId> Digraph::predecessors(VertexId v) const {
  std::vector<VertexId> out;
  for (auto w : in_indices(index_of(v))) out.push_back(ids_[w]);
  return out;
}

namespace {

std::size_t count_reached(const Digraph& g, std::size_t root, bool forward) {
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<std::uint32_t> stack{static_cast<std::uint32_t>(root)};
  seen[root] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    auto u = stack.back();
    stack.pop_back();
    auto next = forward ? g.out_indices(u) : g.in_indices(u);
    for (auto w : next) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached;
}

}  // namespace

bool is_strongly_connected(const Digraph& g) {
  if (g.empty()) throw Error("empty graph");
  const auto n = g.vertex_count();
  return count_reached(g, 0, true) == n && count_reached(g, 0, false) == n;
}

Digraph contract(const Digraph& g, VertexId v) {
  const auto vi = g.index_of(v);
  std::vector<VertexId> vertices;
  vertices.reserve(g.vertex_count() - 1);
  for (auto id : g.vertices())
    if (id != v) vertices.push_back(id);

  std::vector<Edge> edges;
  for (const auto& e : g.edges())
    if (e.first != v && e.second != v) edges.push_back(e);
  for (auto u : g.in_indices(vi)) {
    for (auto w : g.out_indices(vi)) {
      if (u != w) edges.emplace_back(g.id_at(u), g.id_at(w));
    }
  }
  return Digraph(std::move(vertices), edges);
}

bool reachable(const Digraph& g, VertexId from, VertexId to, const VertexPredicate& allowed) {
  const auto s = g.index_of(from);
  const auto t = g.index_of(to);
  if (!allowed(from) || !allowed(to)) throw Error("endpoint filtered out");
  if (s == t) return true;
  std::vector<char> seen(g.vertex_count(), 0);
  std::deque<std::uint32_t> queue{static_cast<std::uint32_t>(s)};
  seen[s] = 1;
  while (!queue.empty()) {
    auto u = queue.front();
    queue.pop_front();
    for (auto w : g.out_indices(u)) {
      if (seen[w] || !allowed(g.id_at(w))) continue;
      if (w == t) return true;
      seen[w] = 1;
      queue.push_back(w);
    }
  }
  return false;
}

Digraph grid_graph(std::size_t n) {
  if (n == 0) throw Error("degenerate grid");
  std::vector<VertexId> vertices(n * n);
  for (std::size_t i = 0; i < n * n; ++i) vertices[i] = static_cast<VertexId>(i + 1);
  std::vector<Edge> pairs;
  auto id = [n](std::size_t r, std::size_t c) { return static_cast<VertexId>(r * n + c + 1); };
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (c + 1 < n) pairs.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < n) pairs.emplace_back(id(r, c), id(r + 1, c));
    }
  }
  return Digraph::undirected(std::move(vertices), pairs);
}

}  // namespace cmapf
