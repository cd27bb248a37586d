#include "chroma/runtime.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace chroma {
namespace {

struct GhostEntry {
  Gid gid;
  Rank owner;
  friend bool operator<(const GhostEntry& a, const GhostEntry& b) { return a.gid < b.gid; }
};

// Lays out one rank's local graph. `adjacency(gid)` must return the full
// neighbor GID list of owned vertices and, when two layers are requested,
// of first-layer ghosts.
template <class Adjacency>
LocalGraph assemble(Rank rank, int layers, std::vector<Gid> owned, std::vector<GhostEntry> first,
                    std::vector<GhostEntry> second, Adjacency&& adjacency) {
  std::sort(owned.begin(), owned.end());
  std::sort(first.begin(), first.end());
  std::sort(second.begin(), second.end());

  LocalGraph lg;
  lg.rank = rank;
  lg.ghost_layers = layers;
  lg.owned_count = owned.size();
  lg.first_layer_count = first.size();
  lg.ghost_count = first.size() + second.size();
  lg.gid = std::move(owned);
  for (const auto& e : first) {
    lg.gid.push_back(e.gid);
    lg.ghost_owner.push_back(e.owner);
  }
  for (const auto& e : second) {
    lg.gid.push_back(e.gid);
    lg.ghost_owner.push_back(e.owner);
  }
  const std::size_t n = lg.gid.size();
  if (n > kMaxVertices) throw ConfigError("local graph too large");
  lg.local_of.reserve(n);
  for (std::size_t v = 0; v < n; ++v) lg.local_of.emplace(lg.gid[v], static_cast<VertexId>(v));

  std::vector<Edge> arcs;
  const std::size_t expanded = layers == 2 ? lg.owned_count + lg.first_layer_count : lg.owned_count;
  for (std::size_t v = 0; v < expanded; ++v) {
    for (Gid nb : adjacency(lg.gid[v])) {
      auto it = lg.local_of.find(nb);
      if (it == lg.local_of.end()) {
        if (v < lg.owned_count) {
          throw ProtocolError("rank " + std::to_string(rank) + " misses neighbor " +
                              std::to_string(nb) + " of owned vertex");
        }
        continue;
      }
      const auto lv = static_cast<VertexId>(v);
      arcs.emplace_back(lv, it->second);
      arcs.emplace_back(it->second, lv);
    }
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  lg.offsets.assign(n + 1, 0);
  lg.indices.reserve(arcs.size());
  for (const auto& [a, b] : arcs) {
    ++lg.offsets[a + 1];
    lg.indices.push_back(b);
  }
  for (std::size_t v = 0; v < n; ++v) lg.offsets[v + 1] += lg.offsets[v];

  std::vector<std::uint8_t> is_b1(lg.owned_count, 0);
  for (VertexId v = 0; v < lg.owned_count; ++v) {
    for (VertexId u : lg.neighbors(v)) {
      if (lg.is_ghost(u)) {
        is_b1[v] = 1;
        break;
      }
    }
    if (is_b1[v]) lg.boundary_d1.push_back(v);
  }
  for (VertexId v = 0; v < lg.owned_count; ++v) {
    bool b2 = is_b1[v] != 0;
    for (VertexId u : lg.neighbors(v)) {
      if (b2) break;
      b2 = !lg.is_ghost(u) && is_b1[u];
    }
    if (b2) lg.boundary_d2.push_back(v);
  }
  return lg;
}

std::vector<LocalGraph> build_direct(const Graph& g, const PartitionMap& pm, int layers) {
  if (pm.num_vertices() != g.num_vertices()) {
    throw ConfigError("partition size does not match graph");
  }
  const auto ranks = static_cast<std::size_t>(pm.num_ranks());
  std::vector<std::vector<Gid>> owned(ranks);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    owned[static_cast<std::size_t>(pm.owner(v))].push_back(v);
  }
  std::vector<LocalGraph> locals;
  locals.reserve(ranks);
  std::vector<int> layer_of(g.num_vertices(), -1);  // scratch, reset per rank
  for (std::size_t r = 0; r < ranks; ++r) {
    const auto rank = static_cast<Rank>(r);
    std::vector<GhostEntry> first;
    std::vector<GhostEntry> second;
    for (Gid v : owned[r]) layer_of[v] = 0;
    for (Gid v : owned[r]) {
      for (VertexId u : g.neighbors(static_cast<VertexId>(v))) {
        if (layer_of[u] < 0) {
          layer_of[u] = 1;
          first.push_back({u, pm.owner(u)});
        }
      }
    }
    if (layers == 2) {
      for (const auto& e : first) {
        for (VertexId x : g.neighbors(static_cast<VertexId>(e.gid))) {
          if (layer_of[x] < 0) {
            layer_of[x] = 2;
            second.push_back({x, pm.owner(x)});
          }
        }
      }
    }
    for (Gid v : owned[r]) layer_of[v] = -1;
    for (const auto& e : first) layer_of[e.gid] = -1;
    for (const auto& e : second) layer_of[e.gid] = -1;
    auto adjacency = [&g](Gid v) { return g.neighbors(static_cast<VertexId>(v)); };
    locals.push_back(assemble(rank, layers, std::move(owned[r]), std::move(first),
                              std::move(second), adjacency));
  }
  return locals;
}

}  // namespace

std::optional<VertexId> LocalGraph::find(Gid g) const {
  auto it = local_of.find(g);
  if (it == local_of.end()) return std::nullopt;
  return it->second;
}

std::size_t LocalGraph::local_edge_count() const {
  std::size_t count = 0;
  for (VertexId v = 0; v < owned_count; ++v) {
    for (VertexId u : neighbors(v)) count += (u < owned_count && v < u) ? 1 : 0;
  }
  return count;
}

std::size_t LocalGraph::ghost_edge_count() const {
  return indices.size() / 2 - local_edge_count();
}

RankWorld::RankWorld(const Graph& g, const PartitionMap& pm, int ghost_layers)
    : RankWorld(
          [&] {
            if (ghost_layers < 1 || ghost_layers > 2) throw ConfigError("ghost layers must be 1 or 2");
            return build_direct(g, pm, ghost_layers);
          }(),
          g.num_vertices(), ghost_layers) {}

RankWorld::RankWorld(std::vector<LocalGraph> locals, std::size_t num_global_vertices,
                     int ghost_layers)
    : locals_(std::move(locals)), num_global_(num_global_vertices), ghost_layers_(ghost_layers) {
  if (ghost_layers < 1 || ghost_layers > 2) throw ConfigError("ghost layers must be 1 or 2");
  if (locals_.empty()) throw ConfigError("need at least one rank");
  build_send_plans();
}

void RankWorld::build_send_plans() {
  plans_.assign(locals_.size(), {});
  // plan[owner][dest] in dest order; entries follow the receiver's ghost order.
  std::vector<std::map<Rank, std::vector<VertexId>>> grouped(locals_.size());
  for (const auto& receiver : locals_) {
    for (VertexId v = static_cast<VertexId>(receiver.owned_count); v < receiver.num_local(); ++v) {
      const Rank owner = receiver.owner(v);
      if (owner < 0 || owner >= num_ranks() || owner == receiver.rank) {
        throw ProtocolError("ghost with invalid owner on rank " + std::to_string(receiver.rank));
      }
      const auto& sender = locals_[static_cast<std::size_t>(owner)];
      auto lv = sender.find(receiver.gid[v]);
      if (!lv || sender.is_ghost(*lv)) {
        throw ProtocolError("rank " + std::to_string(owner) + " does not own gid " +
                            std::to_string(receiver.gid[v]));
      }
      grouped[static_cast<std::size_t>(owner)][receiver.rank].push_back(*lv);
    }
  }
  for (std::size_t r = 0; r < locals_.size(); ++r) {
    for (auto& [dest, owned] : grouped[r]) plans_[r].push_back({dest, std::move(owned)});
  }
}

RankWorld build_local_graphs(const Graph& g, const PartitionMap& pm, int ghost_layers) {
  return RankWorld(g, pm, ghost_layers);
}

RankWorld add_second_ghost_layer(const RankWorld& one_layer, CommStats* stats) {
  if (one_layer.ghost_layers() != 1) throw ConfigError("world already has two ghost layers");
  const int ranks = one_layer.num_ranks();

  // Round 1: every rank asks each ghost's owner for that ghost's adjacency.
  struct Request {
    Rank source;
    Rank dest;
    std::vector<Gid> gids;
  };
  std::vector<Request> requests;
  for (const auto& lg : one_layer.locals()) {
    std::map<Rank, std::vector<Gid>> by_owner;
    for (VertexId v = static_cast<VertexId>(lg.owned_count); v < lg.num_local(); ++v) {
      by_owner[lg.owner(v)].push_back(lg.gid[v]);
    }
    for (auto& [owner, gids] : by_owner) requests.push_back({lg.rank, owner, std::move(gids)});
  }

  // Round 2: owners reply with (neighbor gid, neighbor owner) lists.
  using Reply = std::vector<std::pair<Gid, Rank>>;
  std::vector<std::map<Gid, Reply>> received(static_cast<std::size_t>(ranks));
  CommStats comm;
  for (const auto& req : requests) {
    comm.bytes += req.gids.size() * sizeof(Gid);
    ++comm.messages;
    const auto& owner = one_layer.local(req.dest);
    std::uint64_t reply_entries = 0;
    for (Gid g : req.gids) {
      auto lv = owner.find(g);
      if (!lv || owner.is_ghost(*lv)) {
        throw ProtocolError("adjacency request for gid " + std::to_string(g) +
                            " sent to non-owner");
      }
      Reply reply;
      for (VertexId u : owner.neighbors(*lv)) reply.emplace_back(owner.gid[u], owner.owner(u));
      reply_entries += reply.size();
      received[static_cast<std::size_t>(req.source)].emplace(g, std::move(reply));
    }
    comm.bytes += reply_entries * kBytesPerEntry;
    ++comm.messages;
  }
  if (stats != nullptr) *stats += comm;

  std::vector<LocalGraph> locals;
  locals.reserve(static_cast<std::size_t>(ranks));
  for (const auto& lg : one_layer.locals()) {
    const auto& replies = received[static_cast<std::size_t>(lg.rank)];
    std::vector<Gid> owned(lg.gid.begin(), lg.gid.begin() + static_cast<std::ptrdiff_t>(lg.owned_count));
    std::vector<GhostEntry> first;
    for (VertexId v = static_cast<VertexId>(lg.owned_count); v < lg.num_local(); ++v) {
      first.push_back({lg.gid[v], lg.owner(v)});
    }
    std::map<Gid, Rank> second_map;
    for (const auto& [ghost, reply] : replies) {
      for (const auto& [x, owner] : reply) {
        if (!lg.local_of.contains(x)) second_map.emplace(x, owner);
      }
    }
    std::vector<GhostEntry> second;
    for (const auto& [x, owner] : second_map) second.push_back({x, owner});

    std::vector<Gid> scratch;
    auto adjacency = [&](Gid v) -> const std::vector<Gid>& {
      scratch.clear();
      if (auto lv = lg.find(v); lv && !lg.is_ghost(*lv)) {
        for (VertexId u : lg.neighbors(*lv)) scratch.push_back(lg.gid[u]);
      } else {
        for (const auto& [x, owner] : replies.at(v)) scratch.push_back(x);
      }
      return scratch;
    };
    locals.push_back(assemble(lg.rank, 2, std::move(owned), std::move(first), std::move(second),
                              adjacency));
  }
  return RankWorld(std::move(locals), one_layer.num_global_vertices(), 2);
}

BoundaryExchange::BoundaryExchange(const RankWorld& world) : world_(&world) {
  last_sent_.resize(static_cast<std::size_t>(world.num_ranks()));
  for (Rank r = 0; r < world.num_ranks(); ++r) {
    for (const auto& list : world.send_plan(r)) {
      last_sent_[static_cast<std::size_t>(r)].emplace_back(list.owned.size(), 0u);
    }
  }
}

std::vector<ValueMessage> BoundaryExchange::pack(
    std::span<const std::vector<std::uint32_t>> values, bool changed_only) {
  std::vector<ValueMessage> out;
  for (Rank r = 0; r < world_->num_ranks(); ++r) {
    const auto& lg = world_->local(r);
    const auto& mine = values[static_cast<std::size_t>(r)];
    const auto plan = world_->send_plan(r);
    for (std::size_t l = 0; l < plan.size(); ++l) {
      auto& sent = last_sent_[static_cast<std::size_t>(r)][l];
      ValueMessage msg{r, plan[l].dest, {}};
      for (std::size_t i = 0; i < plan[l].owned.size(); ++i) {
        const VertexId v = plan[l].owned[i];
        if (changed_only && sent[i] == mine[v]) continue;
        msg.entries.emplace_back(lg.gid[v], mine[v]);
        sent[i] = mine[v];
      }
      if (!msg.entries.empty()) out.push_back(std::move(msg));
    }
  }
  return out;
}

void BoundaryExchange::deliver(const RankWorld& world,
                               std::span<std::vector<std::uint32_t>> values,
                               std::span<const ValueMessage> messages) {
  for (const auto& msg : messages) {
    if (msg.dest < 0 || msg.dest >= world.num_ranks()) throw ProtocolError("bad destination rank");
    const auto& lg = world.local(msg.dest);
    auto& target = values[static_cast<std::size_t>(msg.dest)];
    for (const auto& [g, value] : msg.entries) {
      auto lv = lg.find(g);
      if (!lv || !lg.is_ghost(*lv) || lg.owner(*lv) != msg.source) {
        throw ProtocolError("rank " + std::to_string(msg.dest) + " holds no ghost " +
                            std::to_string(g) + " owned by rank " + std::to_string(msg.source));
      }
      target[*lv] = value;
    }
  }
}

CommStats BoundaryExchange::exchange(std::span<std::vector<std::uint32_t>> values,
                                     bool changed_only) {
  const auto messages = pack(values, changed_only);
  deliver(*world_, values, messages);
  CommStats stats;
  for (const auto& m : messages) {
    stats.bytes += m.entries.size() * kBytesPerEntry;
    ++stats.messages;
  }
  return stats;
}

std::vector<Color> snapshot_ghost_colors(const LocalGraph& lg, std::span<const Color> colors) {
  if (colors.size() != lg.num_local()) throw std::invalid_argument("coloring size mismatch");
  return {colors.begin() + static_cast<std::ptrdiff_t>(lg.owned_count), colors.end()};
}

void restore_ghost_colors(const LocalGraph& lg, std::span<Color> colors,
                          std::span<const Color> saved) {
  if (colors.size() != lg.num_local() || saved.size() != lg.ghost_count) {
    throw std::invalid_argument("ghost snapshot size mismatch");
  }
  std::copy(saved.begin(), saved.end(), colors.begin() + static_cast<std::ptrdiff_t>(lg.owned_count));
}

std::size_t count_ghost_inconsistencies(const RankWorld& world,
                                        std::span<const Coloring> colors) {
  std::size_t bad = 0;
  for (const auto& lg : world.locals()) {
    const auto& mine = colors[static_cast<std::size_t>(lg.rank)];
    for (VertexId v = static_cast<VertexId>(lg.owned_count); v < lg.num_local(); ++v) {
      const auto& owner = world.local(lg.owner(v));
      const auto ov = owner.find(lg.gid[v]);
      if (!ov || colors[static_cast<std::size_t>(owner.rank)][*ov] != mine[v]) ++bad;
    }
  }
  return bad;
}

Coloring gather_by_gid(const RankWorld& world, std::span<const Coloring> colors) {
  Coloring out(world.num_global_vertices(), kUncolored);
  for (const auto& lg : world.locals()) {
    const auto& mine = colors[static_cast<std::size_t>(lg.rank)];
    for (VertexId v = 0; v < lg.owned_count; ++v) out[lg.gid[v]] = mine[v];
  }
  return out;
}

}  // namespace chroma
