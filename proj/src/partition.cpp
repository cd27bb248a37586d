#include "chroma/partition.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <string>

namespace chroma {

PartitionMap::PartitionMap(std::vector<Rank> owner, int num_ranks)
    : owner_(std::move(owner)), num_ranks_(num_ranks) {
  if (num_ranks_ < 1) throw std::invalid_argument("partition: need at least one rank");
  for (Rank r : owner_) {
    if (r < 0 || r >= num_ranks_) throw std::invalid_argument("partition: owner out of range");
  }
}

std::vector<std::size_t> PartitionMap::part_sizes() const {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(num_ranks_), 0);
  for (Rank r : owner_) ++sizes[static_cast<std::size_t>(r)];
  return sizes;
}

PartitionMap partition_block(const Graph& g, int num_ranks) {
  if (num_ranks < 1) throw std::invalid_argument("partition: need at least one rank");
  const std::size_t n = g.num_vertices();
  const auto ranks = static_cast<std::size_t>(num_ranks);
  const std::size_t base = n / ranks;
  const std::size_t extra = n % ranks;
  std::vector<Rank> owner(n);
  std::size_t v = 0;
  for (std::size_t r = 0; r < ranks; ++r) {
    const std::size_t size = base + (r < extra ? 1 : 0);
    for (std::size_t i = 0; i < size; ++i) owner[v++] = static_cast<Rank>(r);
  }
  return PartitionMap(std::move(owner), num_ranks);
}

PartitionMap partition_edge_balanced(const Graph& g, int num_ranks, std::uint64_t seed) {
  if (num_ranks < 1) throw std::invalid_argument("partition: need at least one rank");
  const std::size_t n = g.num_vertices();
  constexpr Rank kUnassigned = -1;
  std::vector<Rank> owner(n, kUnassigned);
  std::mt19937_64 rng(seed);

  // Unassigned vertices in random order; consumed from the back when a
  // part needs a fresh BFS root.
  std::vector<VertexId> roots(n);
  std::iota(roots.begin(), roots.end(), VertexId{0});
  std::shuffle(roots.begin(), roots.end(), rng);

  double total_load = 0.0;
  for (VertexId v = 0; v < n; ++v) total_load += static_cast<double>(g.degree(v) + 1);

  std::size_t unassigned = n;
  double assigned_load = 0.0;
  for (Rank r = 0; r < num_ranks; ++r) {
    const auto ranks_after = static_cast<std::size_t>(num_ranks - r - 1);
    if (ranks_after == 0) {
      for (auto& o : owner) {
        if (o == kUnassigned) o = r;
      }
      break;
    }
    const double target = (total_load - assigned_load) / static_cast<double>(ranks_after + 1);
    double load = 0.0;
    std::size_t taken = 0;
    std::deque<VertexId> frontier;
    auto take = [&](VertexId v) {
      owner[v] = r;
      ++taken;
      --unassigned;
      const double w = static_cast<double>(g.degree(v) + 1);
      load += w;
      assigned_load += w;
      for (VertexId u : g.neighbors(v)) {
        if (owner[u] == kUnassigned) frontier.push_back(u);
      }
    };
    while (unassigned > ranks_after && (taken == 0 || load < target)) {
      while (!frontier.empty() && owner[frontier.front()] != kUnassigned) frontier.pop_front();
      if (frontier.empty()) {
        while (owner[roots.back()] != kUnassigned) roots.pop_back();
        take(roots.back());
        roots.pop_back();
      } else {
        const VertexId v = frontier.front();
        frontier.pop_front();
        take(v);
      }
    }
  }
  return PartitionMap(std::move(owner), num_ranks);
}

PartitionMap partition_random(const Graph& g, int num_ranks, std::uint64_t seed) {
  if (num_ranks < 1) throw std::invalid_argument("partition: need at least one rank");
  std::mt19937_64 rng(seed);
  std::vector<Rank> owner(g.num_vertices());
  for (auto& o : owner) o = static_cast<Rank>(rng() % static_cast<std::uint64_t>(num_ranks));
  return PartitionMap(std::move(owner), num_ranks);
}

std::size_t edge_cut(const Graph& g, const PartitionMap& pm) {
  std::size_t cut = 0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    for (VertexId u : g.neighbors(v)) {
      if (v < u && pm.owner(v) != pm.owner(u)) ++cut;
    }
  }
  return cut;
}

double endpoint_imbalance(const Graph& g, const PartitionMap& pm) {
  std::vector<std::size_t> load(static_cast<std::size_t>(pm.num_ranks()), 0);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    load[static_cast<std::size_t>(pm.owner(v))] += g.degree(v);
  }
  const double mean =
      static_cast<double>(g.num_entries()) / static_cast<double>(pm.num_ranks());
  if (mean == 0.0) return 1.0;
  return static_cast<double>(*std::max_element(load.begin(), load.end())) / mean;
}

void write_partition(const PartitionMap& pm, std::ostream& out) {
  for (Rank r : pm.owners()) out << r << '\n';
}

PartitionMap read_partition(std::istream& in, std::size_t num_vertices, int num_ranks) {
  std::vector<Rank> owner;
  owner.reserve(num_vertices);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    Rank r = 0;
    const char* end = line.data() + line.size();
    if (!line.empty() && line.back() == '\r') --end;
    auto [p, ec] = std::from_chars(line.data(), end, r);
    if (ec != std::errc{} || p != end) throw ParseError("expected a rank id", line_no);
    if (r < 0 || r >= num_ranks) throw ParseError("rank id out of range", line_no);
    owner.push_back(r);
  }
  if (owner.size() != num_vertices) {
    throw ParseError("partition lists " + std::to_string(owner.size()) + " vertices, graph has " +
                         std::to_string(num_vertices),
                     0);
  }
  return PartitionMap(std::move(owner), num_ranks);
}

PartitionMap load_partition(const std::filesystem::path& path, std::size_t num_vertices,
                            int num_ranks) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_partition(in, num_vertices, num_ranks);
}

}  // namespace chroma
