#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "chroma/graph.hpp"
#include "chroma/partition.hpp"
#include "chroma/report.hpp"

namespace chroma {

/// Graph to color. Bipartite inputs keep the size of their V_s side so
/// partial counts can be restricted to it.
struct Problem {
  Graph graph;
  std::string source;
  std::optional<std::size_t> num_s;
};

/// Generator specs:
///   mesh:NX,NY,NZ  myciel:K  gnp:N,P[,SEED]  dag:N,P[,SEED] (bipartite)
///   path:N  cycle:N  complete:N  star:LEAVES  petersen
/// A missing SEED falls back to `default_seed`. Throws ConfigError.
Problem generate_problem(std::string_view spec, std::uint64_t default_seed);

/// Reads a graph file (see load_graph). With `bipartite` the file is a
/// directed edge list turned into its bipartite representation.
Problem load_problem(const std::filesystem::path& path, bool bipartite);

/// block, edge or random. Throws ConfigError on other names.
PartitionMap make_partition(const Graph& g, std::string_view kind, int ranks, std::uint64_t seed);

struct RunOutcome {
  RunRecord record;
  DistributedResult result;
};

/// Partition, build the rank world, run, verify on the whole graph and
/// fill a RunRecord. `pm` overrides config.partition. Throws ConfigError
/// and NonConvergenceError.
RunOutcome execute_run(const Problem& problem, const RunConfig& config,
                       const std::optional<PartitionMap>& pm = std::nullopt,
                       bool audit_ghosts = false);

/// One color per line; line i holds the color of vertex i.
void write_colors(const Coloring& c, std::ostream& out);
Coloring read_colors(std::istream& in);

/// Entry point of the `chroma` tool. Returns the process exit code:
/// 0 success, 1 improper coloring or non-convergence, 2 usage, I/O or
/// configuration error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace chroma
