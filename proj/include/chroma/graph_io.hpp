#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "chroma/graph.hpp"

namespace chroma {

/// A graph read from a file together with the external id of each vertex.
/// Edge lists compact ids to 0..n-1 in order of first appearance.
template <class G>
struct Loaded {
  G graph;
  std::vector<std::uint64_t> original_ids;
};

using LoadedGraph = Loaded<Graph>;
using LoadedDirectedGraph = Loaded<DirectedGraph>;

// Edge lists: one "u v" pair per line; lines starting with '#' or '%' are
// comments. Throws ParseError (with line number) on malformed input or
// when the file holds no edges.
LoadedGraph parse_edge_list(std::istream& in);
LoadedDirectedGraph parse_directed_edge_list(std::istream& in);
LoadedGraph load_edge_list(const std::filesystem::path& path);
LoadedDirectedGraph load_directed_edge_list(const std::filesystem::path& path);

/// Matrix Market "coordinate pattern symmetric" only. Ids are 1-based in
/// the file and become 0-based here without compaction.
LoadedGraph parse_matrix_market(std::istream& in);
LoadedGraph load_matrix_market(const std::filesystem::path& path);

/// Picks a reader from the extension: .mtx, .chrg, anything else is an
/// edge list.
LoadedGraph load_graph(const std::filesystem::path& path);

void write_edge_list(const Graph& g, std::ostream& out);
/// Keeps vertex ids and isolated vertices, unlike an edge list.
void write_matrix_market(const Graph& g, std::ostream& out);
void write_edge_list(const DirectedGraph& g, std::ostream& out);

// Binary CSR cache, all fields little-endian:
//   "CHRG" | u32 version (1) | u64 n | u64 m | u64 offsets[n+1] | u32 indices[m]
// m counts adjacency entries (twice the undirected edges).
inline constexpr std::uint32_t kCsrCacheVersion = 1;
void write_csr_binary(const Graph& g, std::ostream& out);
Graph read_csr_binary(std::istream& in);
void save_csr_binary(const Graph& g, const std::filesystem::path& path);
Graph load_csr_binary(const std::filesystem::path& path);

}  // namespace chroma
