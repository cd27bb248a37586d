#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "chroma/types.hpp"

namespace chroma {

/// Non-owning view over CSR adjacency. Used by kernels that run on both
/// whole graphs and rank-local graphs.
struct CsrView {
  std::span<const std::uint64_t> offsets;
  std::span<const VertexId> indices;

  std::size_t num_vertices() const noexcept { return offsets.empty() ? 0 : offsets.size() - 1; }
  std::size_t degree(VertexId v) const noexcept {
    return static_cast<std::size_t>(offsets[v + 1] - offsets[v]);
  }
  std::span<const VertexId> neighbors(VertexId v) const noexcept {
    return indices.subspan(static_cast<std::size_t>(offsets[v]), degree(v));
  }
};

using Edge = std::pair<VertexId, VertexId>;

/// Immutable simple undirected graph in CSR form.
///
/// Every row is sorted and duplicate free, there are no self loops, and the
/// adjacency is symmetric. The constructor checks all of this and throws
/// std::invalid_argument otherwise; use preprocess() for raw edge input.
class Graph {
 public:
  Graph() : offsets_{0} {}
  Graph(std::vector<std::uint64_t> offsets, std::vector<VertexId> indices);

  std::size_t num_vertices() const noexcept { return offsets_.size() - 1; }
  /// Number of adjacency entries, i.e. twice the undirected edge count.
  std::size_t num_entries() const noexcept { return indices_.size(); }
  std::size_t num_edges() const noexcept { return indices_.size() / 2; }

  std::size_t degree(VertexId v) const noexcept { return view().degree(v); }
  std::span<const VertexId> neighbors(VertexId v) const noexcept { return view().neighbors(v); }
  bool has_edge(VertexId u, VertexId v) const;

  CsrView view() const noexcept { return {offsets_, indices_}; }
  std::span<const std::uint64_t> offsets() const noexcept { return offsets_; }
  std::span<const VertexId> indices() const noexcept { return indices_; }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::uint64_t> offsets_;
  std::vector<VertexId> indices_;
};

/// Directed graph with sorted, duplicate-free rows. Self loops are kept:
/// for a nonsymmetric matrix they are the diagonal entries.
class DirectedGraph {
 public:
  DirectedGraph() : offsets_{0} {}
  DirectedGraph(std::vector<std::uint64_t> offsets, std::vector<VertexId> indices);

  std::size_t num_vertices() const noexcept { return offsets_.size() - 1; }
  std::size_t num_arcs() const noexcept { return indices_.size(); }
  std::span<const VertexId> successors(VertexId v) const noexcept { return view().neighbors(v); }
  CsrView view() const noexcept { return {offsets_, indices_}; }

  friend bool operator==(const DirectedGraph&, const DirectedGraph&) = default;

 private:
  std::vector<std::uint64_t> offsets_;
  std::vector<VertexId> indices_;
};

/// Bipartite representation B(V_s, V_t, E_B) of a directed graph. Vertex
/// s_v is index v and t_u is index num_s + u in `graph`.
struct BipartiteGraph {
  std::size_t num_s = 0;
  std::size_t num_t = 0;
  Graph graph;

  VertexId s(VertexId v) const noexcept { return v; }
  VertexId t(VertexId u) const noexcept { return static_cast<VertexId>(num_s + u); }
};

struct GraphStats {
  std::size_t num_vertices = 0;
  std::size_t num_edges = 0;  // undirected edges, each counted once
  double delta_avg = 0.0;
  std::size_t delta_max = 0;
};

/// Removes self loops and duplicates and symmetrizes. When num_vertices is
/// 0 it is inferred as max id + 1.
Graph preprocess(std::span<const Edge> edges, std::size_t num_vertices = 0);

/// Sorts and de-duplicates arcs; self loops survive.
DirectedGraph preprocess_directed(std::span<const Edge> arcs, std::size_t num_vertices = 0);

/// Symmetric closure of a directed graph with self loops dropped.
Graph symmetrize(const DirectedGraph& d);
Graph symmetrize(const Graph& g);

GraphStats stats(const Graph& g);

BipartiteGraph to_bipartite(const DirectedGraph& d);

}  // namespace chroma
