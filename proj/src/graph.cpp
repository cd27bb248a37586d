#include "chroma/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace chroma {
namespace {

void check_csr(std::span<const std::uint64_t> offsets, std::span<const VertexId> indices) {
  if (offsets.empty() || offsets.front() != 0) {
    throw std::invalid_argument("csr: offsets must start with 0");
  }
  if (offsets.back() != indices.size()) {
    throw std::invalid_argument("csr: last offset must equal the number of indices");
  }
  const std::size_t n = offsets.size() - 1;
  if (n > kMaxVertices) throw std::invalid_argument("csr: too many vertices");
  for (std::size_t v = 0; v < n; ++v) {
    if (offsets[v] > offsets[v + 1]) throw std::invalid_argument("csr: offsets decrease");
    for (auto i = offsets[v]; i < offsets[v + 1]; ++i) {
      if (indices[i] >= n) {
        throw std::invalid_argument("csr: neighbor id out of range in row " + std::to_string(v));
      }
      if (i > offsets[v] && indices[i - 1] >= indices[i]) {
        throw std::invalid_argument("csr: row " + std::to_string(v) + " unsorted or duplicated");
      }
    }
  }
}

std::size_t infer_count(std::span<const Edge> edges, std::size_t num_vertices) {
  std::size_t n = num_vertices;
  for (const auto& [u, v] : edges) {
    n = std::max<std::size_t>(n, std::max(u, v) + std::size_t{1});
  }
  if (n > kMaxVertices) throw std::invalid_argument("graph: too many vertices");
  return n;
}

// Builds sorted unique rows from arcs.
std::pair<std::vector<std::uint64_t>, std::vector<VertexId>> build_rows(
    std::vector<Edge> arcs, std::size_t n) {
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  std::vector<std::uint64_t> offsets(n + 1, 0);
  std::vector<VertexId> indices;
  indices.reserve(arcs.size());
  for (const auto& [u, v] : arcs) {
    ++offsets[u + 1];
    indices.push_back(v);
  }
  for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
  return {std::move(offsets), std::move(indices)};
}

}  // namespace

Graph::Graph(std::vector<std::uint64_t> offsets, std::vector<VertexId> indices)
    : offsets_(std::move(offsets)), indices_(std::move(indices)) {
  check_csr(offsets_, indices_);
  const std::size_t n = num_vertices();
  for (VertexId v = 0; v < n; ++v) {
    for (VertexId u : neighbors(v)) {
      if (u == v) throw std::invalid_argument("graph: self loop at " + std::to_string(v));
      if (!has_edge(u, v)) {
        throw std::invalid_argument("graph: edge " + std::to_string(v) + "->" +
                                    std::to_string(u) + " has no reverse");
      }
    }
  }
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  auto row = neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

DirectedGraph::DirectedGraph(std::vector<std::uint64_t> offsets, std::vector<VertexId> indices)
    : offsets_(std::move(offsets)), indices_(std::move(indices)) {
  check_csr(offsets_, indices_);
}

Graph preprocess(std::span<const Edge> edges, std::size_t num_vertices) {
  const std::size_t n = infer_count(edges, num_vertices);
  std::vector<Edge> arcs;
  arcs.reserve(edges.size() * 2);
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    arcs.emplace_back(u, v);
    arcs.emplace_back(v, u);
  }
  auto [offsets, indices] = build_rows(std::move(arcs), n);
  return Graph(std::move(offsets), std::move(indices));
}

DirectedGraph preprocess_directed(std::span<const Edge> arcs, std::size_t num_vertices) {
  const std::size_t n = infer_count(arcs, num_vertices);
  auto [offsets, indices] = build_rows(std::vector<Edge>(arcs.begin(), arcs.end()), n);
  return DirectedGraph(std::move(offsets), std::move(indices));
}

namespace {
template <class CsrLike>
std::vector<Edge> collect_arcs(const CsrLike& g) {
  std::vector<Edge> arcs;
  const CsrView view = g.view();
  arcs.reserve(view.indices.size());
  for (VertexId v = 0; v < view.num_vertices(); ++v) {
    for (VertexId u : view.neighbors(v)) arcs.emplace_back(v, u);
  }
  return arcs;
}
}  // namespace

Graph symmetrize(const DirectedGraph& d) {
  return preprocess(collect_arcs(d), d.num_vertices());
}

Graph symmetrize(const Graph& g) { return preprocess(collect_arcs(g), g.num_vertices()); }

GraphStats stats(const Graph& g) {
  GraphStats s;
  s.num_vertices = g.num_vertices();
  s.num_edges = g.num_edges();
  for (VertexId v = 0; v < s.num_vertices; ++v) s.delta_max = std::max(s.delta_max, g.degree(v));
  s.delta_avg = s.num_vertices == 0
                    ? 0.0
                    : static_cast<double>(g.num_entries()) / static_cast<double>(s.num_vertices);
  return s;
}

BipartiteGraph to_bipartite(const DirectedGraph& d) {
  BipartiteGraph b;
  b.num_s = d.num_vertices();
  b.num_t = d.num_vertices();
  std::vector<Edge> edges;
  edges.reserve(d.num_arcs());
  for (VertexId v = 0; v < d.num_vertices(); ++v) {
    for (VertexId u : d.successors(v)) edges.emplace_back(b.s(v), b.t(u));
  }
  b.graph = preprocess(edges, b.num_s + b.num_t);
  return b;
}

}  // namespace chroma
