#pragma once

// In-process stand-in for a distributed-memory job. Every rank owns a
// LocalGraph; ranks interact only through the message and collective
// helpers below, which also account communication volume.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "chroma/graph.hpp"
#include "chroma/partition.hpp"

namespace chroma {

/// One rank's view: owned vertices first (ascending GID), then first-layer
/// ghosts, then second-layer ghosts (each ascending GID).
///
/// Owned and first-layer rows are complete with respect to the vertices
/// the rank knows about. Second-layer rows hold only their edges to the
/// first layer, since those are the only adjacency lists ever received.
struct LocalGraph {
  Rank rank = 0;
  int ghost_layers = 1;
  std::size_t owned_count = 0;
  std::size_t first_layer_count = 0;
  std::size_t ghost_count = 0;
  std::vector<std::uint64_t> offsets{0};
  std::vector<VertexId> indices;
  std::vector<Gid> gid;
  std::vector<Rank> ghost_owner;  // indexed by v - owned_count
  std::vector<VertexId> boundary_d1;
  std::vector<VertexId> boundary_d2;
  std::unordered_map<Gid, VertexId> local_of;

  std::size_t num_local() const noexcept { return owned_count + ghost_count; }
  bool is_ghost(VertexId v) const noexcept { return v >= owned_count; }
  bool is_second_layer(VertexId v) const noexcept { return v >= owned_count + first_layer_count; }
  Rank owner(VertexId v) const noexcept {
    return is_ghost(v) ? ghost_owner[v - owned_count] : rank;
  }
  std::optional<VertexId> find(Gid g) const;
  CsrView view() const noexcept { return {offsets, indices}; }
  std::span<const VertexId> neighbors(VertexId v) const noexcept { return view().neighbors(v); }
  /// |E_l|: edges with both endpoints owned.
  std::size_t local_edge_count() const;
  /// |E_g|: edges with at least one ghost endpoint.
  std::size_t ghost_edge_count() const;

  friend bool operator==(const LocalGraph&, const LocalGraph&) = default;
};

/// Owned local vertices of `rank` that some other rank holds as a ghost,
/// grouped by destination.
struct SendList {
  Rank dest = 0;
  std::vector<VertexId> owned;
};

class RankWorld {
 public:
  /// Throws ConfigError unless 1 <= ghost_layers <= 2.
  RankWorld(const Graph& g, const PartitionMap& pm, int ghost_layers);
  /// Assembles a world from already-built local graphs. Throws
  /// ProtocolError when a ghost's owner does not own that GID.
  RankWorld(std::vector<LocalGraph> locals, std::size_t num_global_vertices, int ghost_layers);

  int num_ranks() const noexcept { return static_cast<int>(locals_.size()); }
  int ghost_layers() const noexcept { return ghost_layers_; }
  std::size_t num_global_vertices() const noexcept { return num_global_; }
  const LocalGraph& local(Rank r) const { return locals_[static_cast<std::size_t>(r)]; }
  std::span<const LocalGraph> locals() const noexcept { return locals_; }
  std::span<const SendList> send_plan(Rank r) const { return plans_[static_cast<std::size_t>(r)]; }

  friend bool operator==(const RankWorld& a, const RankWorld& b) {
    return a.ghost_layers_ == b.ghost_layers_ && a.num_global_ == b.num_global_ &&
           a.locals_ == b.locals_;
  }

 private:
  void build_send_plans();

  std::vector<LocalGraph> locals_;
  std::vector<std::vector<SendList>> plans_;
  std::size_t num_global_ = 0;
  int ghost_layers_ = 1;
};

struct CommStats {
  std::uint64_t bytes = 0;
  std::uint64_t messages = 0;

  CommStats& operator+=(const CommStats& o) noexcept {
    bytes += o.bytes;
    messages += o.messages;
    return *this;
  }
};

/// Builds all local graphs directly from the global graph.
RankWorld build_local_graphs(const Graph& g, const PartitionMap& pm, int ghost_layers);

/// Adds the second ghost layer to a one-layer world using only rank-local
/// data: each rank asks the owners of its ghosts for their adjacency lists.
RankWorld add_second_ghost_layer(const RankWorld& one_layer, CommStats* stats = nullptr);

/// Bytes accounted per (gid, value) pair: u64 gid + u32 value.
inline constexpr std::uint64_t kBytesPerEntry = 12;

struct ValueMessage {
  Rank source = 0;
  Rank dest = 0;
  std::vector<std::pair<Gid, std::uint32_t>> entries;
};

/// Pushes owned per-vertex values (colors, degrees) to every rank holding a
/// ghost copy. Remembers what each receiver last got so that later rounds
/// can send only changed values.
class BoundaryExchange {
 public:
  explicit BoundaryExchange(const RankWorld& world);

  /// values[r] is sized to rank r's local graph.
  CommStats exchange(std::span<std::vector<std::uint32_t>> values, bool changed_only);

  std::vector<ValueMessage> pack(std::span<const std::vector<std::uint32_t>> values,
                                 bool changed_only);
  /// Throws ProtocolError if an entry names a GID the receiver does not
  /// hold as a ghost owned by the sender.
  static void deliver(const RankWorld& world, std::span<std::vector<std::uint32_t>> values,
                      std::span<const ValueMessage> messages);

 private:
  const RankWorld* world_;
  // last_sent_[r][list][i] mirrors the value the receiver holds.
  std::vector<std::vector<std::vector<std::uint32_t>>> last_sent_;
};

template <class T>
std::vector<T> allreduce_sum(std::span<const T> per_rank) {
  T total{};
  for (const T& x : per_rank) total += x;
  return std::vector<T>(per_rank.size(), total);
}

template <class T>
std::vector<T> allreduce_max(std::span<const T> per_rank) {
  T best{};
  for (const T& x : per_rank) best = std::max(best, x);
  return std::vector<T>(per_rank.size(), best);
}

/// Ghost entries of `colors` (positions owned_count..).
std::vector<Color> snapshot_ghost_colors(const LocalGraph& lg, std::span<const Color> colors);

/// Writes ghost entries back; owned entries are untouched. Throws
/// std::invalid_argument on a length mismatch.
void restore_ghost_colors(const LocalGraph& lg, std::span<Color> colors,
                          std::span<const Color> saved);

/// Number of ghost copies whose color differs from the owner's.
std::size_t count_ghost_inconsistencies(const RankWorld& world,
                                        std::span<const Coloring> colors);

/// Global coloring indexed by GID, taken from each vertex's owner.
Coloring gather_by_gid(const RankWorld& world, std::span<const Coloring> colors);

/// Calls fn(rank) for every rank, one thread per rank when `parallel`.
template <class Fn>
void for_each_rank(int num_ranks, bool parallel, Fn&& fn) {
  if (!parallel || num_ranks <= 1) {
    for (Rank r = 0; r < num_ranks; ++r) fn(r);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(num_ranks));
  for (Rank r = 0; r < num_ranks; ++r) pool.emplace_back([&fn, r] { fn(r); });
}

}  // namespace chroma
