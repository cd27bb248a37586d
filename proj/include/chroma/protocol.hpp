#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "chroma/localcolor.hpp"
#include "chroma/runtime.hpp"

namespace chroma {

enum class Mode { D1, D1_2GL, D2, PD2 };

std::string_view to_string(Mode m);
/// Accepts d1, d1-2gl, d2, pd2. Throws ConfigError otherwise.
Mode parse_mode(std::string_view text);
/// Ghost layers a mode needs: 1 for D1, 2 otherwise.
int required_ghost_layers(Mode m);
bool is_distance2(Mode m);

struct AlgorithmConfig {
  Mode mode = Mode::D1;
  /// On a cross-rank conflict, uncolor the lower-degree endpoint first.
  bool recolor_degrees = false;
  std::optional<KernelKind> kernel_override;
  std::size_t eb_threshold = 6000;
  bool deterministic = true;
  unsigned workers = 1;
  bool parallel_ranks = false;
  std::size_t max_rounds = 200;
  /// Scan every ghost against its owner after each exchange and record the
  /// mismatches in the round report.
  bool audit_ghosts = false;
};

/// Deterministic 64-bit mix of a GID (splitmix64 finalizer). Every rank
/// computes the same value without communication.
constexpr std::uint64_t gid_rand(std::uint64_t gid) noexcept {
  std::uint64_t z = gid + 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Colors, GIDs and global degrees of one rank's local vertices.
struct ConflictContext {
  std::span<Color> colors;
  std::span<const Gid> gids;
  std::span<const std::uint32_t> degrees;
  bool recolor_degrees = false;
};

/// If v and u share a nonzero color, uncolors one of them and returns 1;
/// otherwise returns 0. The loser is, in order: the lower global degree
/// (with recolor_degrees), the higher gid_rand, the higher GID. Throws
/// std::logic_error when v and u carry the same GID.
int check_conflicts(VertexId v, VertexId u, const ConflictContext& ctx);

/// Global GID of the vertex check_conflicts would uncolor.
Gid conflict_loser(Gid a, std::uint32_t degree_a, Gid b, std::uint32_t degree_b,
                   bool recolor_degrees);

/// Scans the edges of every ghost, stopping a ghost's scan once it is
/// uncolored. The result is a termination signal rather than an exact
/// conflict count.
std::size_t detect_conflicts_d1(const LocalGraph& lg, const ConflictContext& ctx,
                                const simd::KernelTable* kernels = nullptr);

/// Checks each boundary vertex against its two-hop neighborhood (and its
/// neighbors unless `partial`). Throws ConfigError on a one-layer graph.
std::size_t detect_conflicts_d2(const LocalGraph& lg, std::span<const VertexId> boundary,
                                const ConflictContext& ctx, bool partial,
                                const simd::KernelTable* kernels = nullptr);

/// Global degree of every local vertex on every rank; ghosts are filled by
/// one exchange from their owners.
std::vector<std::vector<std::uint32_t>> compute_global_degrees(const RankWorld& world,
                                                               CommStats* stats = nullptr);

struct RoundReport {
  std::size_t round = 0;
  std::uint64_t conflicts = 0;  // global sum after the allreduce
  std::vector<std::uint64_t> recolored;  // owned vertices colored this round, per rank
  std::uint64_t bytes_sent = 0;
  std::uint64_t messages_sent = 0;
  double color_ms = 0.0;
  double comm_ms = 0.0;
  double detect_ms = 0.0;
  std::uint64_t ghost_mismatches = 0;  // only with audit_ghosts

  std::uint64_t recolored_total() const;
};

struct DistributedResult {
  Coloring colors;   // final, indexed by GID
  Coloring initial;  // after the first local coloring, before any repair
  std::vector<RoundReport> rounds;
  KernelChoice kernel;
  CommStats setup_comm;  // degree exchange
};

class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, RoundReport last)
      : std::runtime_error(what), last_(std::move(last)) {}
  const RoundReport& last_report() const noexcept { return last_; }

 private:
  RoundReport last_;
};

/// Speculative distributed coloring: color locally, exchange boundary
/// colors, detect conflicts, allreduce, then repeat recolor rounds until
/// no rank sees a conflict. Throws ConfigError when the world's ghost
/// layers do not suit the mode and NonConvergenceError after max_rounds.
DistributedResult run_distributed(const RankWorld& world, const AlgorithmConfig& cfg);

}  // namespace chroma
