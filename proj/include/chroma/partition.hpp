#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "chroma/graph.hpp"

namespace chroma {

/// Owner rank of every global vertex.
class PartitionMap {
 public:
  /// Throws std::invalid_argument if num_ranks < 1 or an owner is out of range.
  PartitionMap(std::vector<Rank> owner, int num_ranks);

  int num_ranks() const noexcept { return num_ranks_; }
  std::size_t num_vertices() const noexcept { return owner_.size(); }
  Rank owner(VertexId v) const noexcept { return owner_[v]; }
  std::span<const Rank> owners() const noexcept { return owner_; }
  std::vector<std::size_t> part_sizes() const;

  friend bool operator==(const PartitionMap&, const PartitionMap&) = default;

 private:
  std::vector<Rank> owner_;
  int num_ranks_;
};

/// Contiguous id ranges; part sizes differ by at most one.
PartitionMap partition_block(const Graph& g, int num_ranks);

/// Greedy BFS-grown parts balanced on edge endpoints (degree + 1 per vertex
/// while growing). Every rank gets at least one vertex when n >= ranks.
PartitionMap partition_edge_balanced(const Graph& g, int num_ranks, std::uint64_t seed);

/// Uniform random owners. Used to stress the protocol with bad partitions.
PartitionMap partition_random(const Graph& g, int num_ranks, std::uint64_t seed);

std::size_t edge_cut(const Graph& g, const PartitionMap& pm);

/// max over ranks of owned edge endpoints divided by the mean.
double endpoint_imbalance(const Graph& g, const PartitionMap& pm);

// Partition file: line i holds the owner rank of vertex i.
void write_partition(const PartitionMap& pm, std::ostream& out);
PartitionMap read_partition(std::istream& in, std::size_t num_vertices, int num_ranks);
PartitionMap load_partition(const std::filesystem::path& path, std::size_t num_vertices,
                            int num_ranks);

}  // namespace chroma
