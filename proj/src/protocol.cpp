#include "chroma/protocol.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <string>

namespace chroma {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

const simd::KernelTable& kernels_or_active(const simd::KernelTable* k) {
  return k != nullptr ? *k : simd::active_kernels();
}

}  // namespace

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::D1: return "d1";
    case Mode::D1_2GL: return "d1-2gl";
    case Mode::D2: return "d2";
    case Mode::PD2: return "pd2";
  }
  return "?";
}

Mode parse_mode(std::string_view text) {
  if (text == "d1") return Mode::D1;
  if (text == "d1-2gl") return Mode::D1_2GL;
  if (text == "d2") return Mode::D2;
  if (text == "pd2") return Mode::PD2;
  throw ConfigError("unknown mode '" + std::string(text) + "' (expected d1, d1-2gl, d2, pd2)");
}

int required_ghost_layers(Mode m) { return m == Mode::D1 ? 1 : 2; }

bool is_distance2(Mode m) { return m == Mode::D2 || m == Mode::PD2; }

Gid conflict_loser(Gid a, std::uint32_t degree_a, Gid b, std::uint32_t degree_b,
                   bool recolor_degrees) {
  if (recolor_degrees && degree_a < degree_b) return a;
  if (recolor_degrees && degree_b < degree_a) return b;
  const auto ra = gid_rand(a);
  const auto rb = gid_rand(b);
  if (ra > rb) return a;
  if (rb > ra) return b;
  return a > b ? a : b;
}

int check_conflicts(VertexId v, VertexId u, const ConflictContext& ctx) {
  if (v == u || ctx.gids[v] == ctx.gids[u]) {
    throw std::logic_error("check_conflicts: vertex compared with itself");
  }
  const Color cv = ctx.colors[v];
  if (cv == kUncolored || cv != ctx.colors[u]) return 0;
  const Gid loser = conflict_loser(ctx.gids[v], ctx.degrees[v], ctx.gids[u], ctx.degrees[u],
                                   ctx.recolor_degrees);
  ctx.colors[loser == ctx.gids[v] ? v : u] = kUncolored;
  return 1;
}

std::size_t detect_conflicts_d1(const LocalGraph& lg, const ConflictContext& ctx,
                                const simd::KernelTable* kernels) {
  const auto& k = kernels_or_active(kernels);
  const Color* colors = ctx.colors.data();
  std::size_t conflicts = 0;
  for (auto g = static_cast<VertexId>(lg.owned_count); g < lg.num_local(); ++g) {
    const Color c = colors[g];
    if (c == kUncolored) continue;
    const auto nbrs = lg.neighbors(g);
    std::size_t pos = 0;
    while (pos < nbrs.size()) {
      pos += k.find_color(nbrs.subspan(pos), colors, c);
      if (pos == nbrs.size()) break;
      conflicts += static_cast<std::size_t>(check_conflicts(g, nbrs[pos], ctx));
      if (colors[g] == kUncolored) break;
      ++pos;
    }
  }
  return conflicts;
}

std::size_t detect_conflicts_d2(const LocalGraph& lg, std::span<const VertexId> boundary,
                                const ConflictContext& ctx, bool partial,
                                const simd::KernelTable* kernels) {
  if (lg.ghost_layers < 2) {
    throw ConfigError("distance-2 conflict detection needs two ghost layers");
  }
  const auto& k = kernels_or_active(kernels);
  const Color* colors = ctx.colors.data();
  std::size_t conflicts = 0;
  for (VertexId v : boundary) {
    for (VertexId u : lg.neighbors(v)) {
      const Color c = colors[v];
      if (c == kUncolored) break;
      if (!partial) {
        conflicts += static_cast<std::size_t>(check_conflicts(v, u, ctx));
        if (colors[v] == kUncolored) break;
      }
      const auto two_hop = lg.neighbors(u);
      std::size_t pos = 0;
      while (pos < two_hop.size()) {
        pos += k.find_color(two_hop.subspan(pos), colors, c);
        if (pos == two_hop.size()) break;
        if (two_hop[pos] != v) {
          conflicts += static_cast<std::size_t>(check_conflicts(v, two_hop[pos], ctx));
          if (colors[v] == kUncolored) break;
        }
        ++pos;
      }
    }
  }
  return conflicts;
}

std::vector<std::vector<std::uint32_t>> compute_global_degrees(const RankWorld& world,
                                                               CommStats* stats) {
  std::vector<std::vector<std::uint32_t>> degrees;
  degrees.reserve(static_cast<std::size_t>(world.num_ranks()));
  for (const auto& lg : world.locals()) {
    std::vector<std::uint32_t> d(lg.num_local(), 0);
    // Owned rows are complete, so local degree is global degree there.
    for (VertexId v = 0; v < lg.owned_count; ++v) {
      d[v] = static_cast<std::uint32_t>(lg.view().degree(v));
    }
    degrees.push_back(std::move(d));
  }
  BoundaryExchange exchange(world);
  const CommStats comm = exchange.exchange(degrees, false);
  if (stats != nullptr) *stats += comm;
  return degrees;
}

std::uint64_t RoundReport::recolored_total() const {
  return std::accumulate(recolored.begin(), recolored.end(), std::uint64_t{0});
}

DistributedResult run_distributed(const RankWorld& world, const AlgorithmConfig& cfg) {
  if (world.ghost_layers() != required_ghost_layers(cfg.mode)) {
    throw ConfigError("mode " + std::string(to_string(cfg.mode)) + " needs " +
                      std::to_string(required_ghost_layers(cfg.mode)) + " ghost layer(s), world has " +
                      std::to_string(world.ghost_layers()));
  }
  if (cfg.max_rounds < 1) throw ConfigError("max_rounds must be at least 1");

  const int num_ranks = world.num_ranks();
  const auto ranks = static_cast<std::size_t>(num_ranks);
  const bool d2 = is_distance2(cfg.mode);
  const bool partial = cfg.mode == Mode::PD2;

  DistributedResult result;
  const auto degrees = compute_global_degrees(world, &result.setup_comm);

  std::vector<std::uint32_t> local_max(ranks, 0);
  for (const auto& lg : world.locals()) {
    const auto& d = degrees[static_cast<std::size_t>(lg.rank)];
    for (VertexId v = 0; v < lg.owned_count; ++v) {
      local_max[static_cast<std::size_t>(lg.rank)] =
          std::max(local_max[static_cast<std::size_t>(lg.rank)], d[v]);
    }
  }
  const std::uint32_t delta_max = allreduce_max<std::uint32_t>(local_max).front();
  if (d2) {
    result.kernel = {KernelKind::NetBasedD2, cfg.eb_threshold};
  } else if (cfg.kernel_override) {
    result.kernel = {*cfg.kernel_override, cfg.eb_threshold};
  } else {
    result.kernel = select_kernel(delta_max, {KernelKind::VertexBased, cfg.eb_threshold});
  }

  std::vector<Coloring> colors(ranks);
  std::vector<std::vector<Color>> ghost_saved(ranks);
  for (const auto& lg : world.locals()) {
    colors[static_cast<std::size_t>(lg.rank)].assign(lg.num_local(), kUncolored);
  }
  BoundaryExchange exchange(world);
  const SpeculativeOptions opts{cfg.deterministic, cfg.workers, nullptr};

  auto color_rank = [&](Rank r, std::span<const VertexId> worklist) {
    const auto& lg = world.local(r);
    auto& c = colors[static_cast<std::size_t>(r)];
    if (d2) {
      speculative_color_d2(lg.view(), c, worklist, partial, opts);
    } else {
      speculative_color(lg.view(), c, worklist, result.kernel, opts);
    }
  };

  // Exchange, detect and allreduce; closes out `report`.
  auto finish_round = [&](RoundReport& report, bool changed_only) {
    auto start = Clock::now();
    const CommStats comm = exchange.exchange(colors, changed_only);
    report.bytes_sent = comm.bytes;
    report.messages_sent = comm.messages;
    report.comm_ms += ms_since(start);
    if (cfg.audit_ghosts) report.ghost_mismatches = count_ghost_inconsistencies(world, colors);

    std::vector<std::uint64_t> found(ranks, 0);
    std::vector<double> detect_ms(ranks, 0.0);
    for_each_rank(num_ranks, cfg.parallel_ranks, [&](Rank r) {
      const auto t0 = Clock::now();
      const auto& lg = world.local(r);
      auto& c = colors[static_cast<std::size_t>(r)];
      // Ghost colors as received; restored after the recolor step.
      ghost_saved[static_cast<std::size_t>(r)] = snapshot_ghost_colors(lg, c);
      const ConflictContext ctx{c, lg.gid, degrees[static_cast<std::size_t>(r)],
                                cfg.recolor_degrees};
      found[static_cast<std::size_t>(r)] =
          d2 ? detect_conflicts_d2(lg, lg.boundary_d2, ctx, partial)
             : detect_conflicts_d1(lg, ctx);
      detect_ms[static_cast<std::size_t>(r)] = ms_since(t0);
    });
    report.detect_ms = std::accumulate(detect_ms.begin(), detect_ms.end(), 0.0);

    start = Clock::now();
    report.conflicts = allreduce_sum<std::uint64_t>(found).front();
    report.comm_ms += ms_since(start);
  };

  // Initial coloring of owned vertices; ghosts are still uncolored.
  {
    RoundReport report;
    report.round = 0;
    report.recolored.assign(ranks, 0);
    std::vector<double> color_ms(ranks, 0.0);
    for_each_rank(num_ranks, cfg.parallel_ranks, [&](Rank r) {
      const auto t0 = Clock::now();
      const auto& lg = world.local(r);
      std::vector<VertexId> owned(lg.owned_count);
      std::iota(owned.begin(), owned.end(), VertexId{0});
      color_rank(r, owned);
      report.recolored[static_cast<std::size_t>(r)] = owned.size();
      color_ms[static_cast<std::size_t>(r)] = ms_since(t0);
    });
    report.color_ms = std::accumulate(color_ms.begin(), color_ms.end(), 0.0);
    result.initial = gather_by_gid(world, colors);
    finish_round(report, false);
    result.rounds.push_back(std::move(report));
  }

  while (result.rounds.back().conflicts > 0) {
    if (result.rounds.size() >= cfg.max_rounds) {
      throw NonConvergenceError("no convergence after " + std::to_string(cfg.max_rounds) +
                                    " rounds",
                                result.rounds.back());
    }
    RoundReport report;
    report.round = result.rounds.size();
    report.recolored.assign(ranks, 0);
    std::vector<double> color_ms(ranks, 0.0);
    for_each_rank(num_ranks, cfg.parallel_ranks, [&](Rank r) {
      const auto t0 = Clock::now();
      const auto& lg = world.local(r);
      auto& c = colors[static_cast<std::size_t>(r)];
      // Uncolored ghosts are recolored too so the local kernel never
      // settles a conflict on its own terms; their colors are discarded.
      std::vector<VertexId> worklist;
      for (VertexId v = 0; v < lg.num_local(); ++v) {
        if (c[v] == kUncolored) worklist.push_back(v);
      }
      report.recolored[static_cast<std::size_t>(r)] = static_cast<std::uint64_t>(
          std::count_if(worklist.begin(), worklist.end(),
                        [&](VertexId v) { return !lg.is_ghost(v); }));
      color_rank(r, worklist);
      restore_ghost_colors(lg, c, ghost_saved[static_cast<std::size_t>(r)]);
      color_ms[static_cast<std::size_t>(r)] = ms_since(t0);
    });
    report.color_ms = std::accumulate(color_ms.begin(), color_ms.end(), 0.0);
    finish_round(report, true);
    result.rounds.push_back(std::move(report));
  }

  result.colors = gather_by_gid(world, colors);
  return result;
}

}  // namespace chroma
