#include "chroma/localcolor.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace chroma {
namespace {

const simd::KernelTable& kernels_of(const SpeculativeOptions& opts) {
  return opts.kernels != nullptr ? *opts.kernels : simd::active_kernels();
}

// Runs fn(worker, begin, end) over [0, n) split into contiguous chunks.
template <class Fn>
void parallel_chunks(std::size_t n, unsigned workers, Fn&& fn) {
  const std::size_t w = std::max<std::size_t>(1, std::min<std::size_t>(workers, n));
  if (w == 1) {
    fn(0u, std::size_t{0}, n);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(w);
  for (std::size_t t = 0; t < w; ++t) {
    const std::size_t begin = n * t / w;
    const std::size_t end = n * (t + 1) / w;
    pool.emplace_back([&fn, t, begin, end] { fn(static_cast<unsigned>(t), begin, end); });
  }
}

// Vertices on which some newly colored neighbor (or net peer) with a
// larger index shares the color. Keeps the larger index.
using LoserScan = std::vector<VertexId> (*)(CsrView, std::span<const Color>,
                                            std::span<const VertexId>,
                                            const std::vector<std::uint8_t>&, unsigned, bool);

std::vector<VertexId> merge_losers(std::vector<std::vector<VertexId>>& parts) {
  std::vector<VertexId> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<VertexId> losers_vertex_based(CsrView g, std::span<const Color> colors,
                                          std::span<const VertexId> pending,
                                          const std::vector<std::uint8_t>& in_pending,
                                          unsigned workers, bool /*partial*/) {
  std::vector<std::vector<VertexId>> parts(workers);
  parallel_chunks(pending.size(), workers, [&](unsigned t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const VertexId v = pending[i];
      for (VertexId u : g.neighbors(v)) {
        if (u > v && in_pending[u] && colors[u] == colors[v]) {
          parts[t].push_back(v);
          break;
        }
      }
    }
  });
  return merge_losers(parts);
}

std::vector<VertexId> losers_edge_based(CsrView g, std::span<const Color> colors,
                                        std::span<const VertexId> pending,
                                        const std::vector<std::uint8_t>& in_pending,
                                        unsigned workers, bool /*partial*/) {
  std::vector<Edge> edges;
  for (VertexId v : pending) {
    for (VertexId u : g.neighbors(v)) {
      if (u > v && in_pending[u]) edges.emplace_back(v, u);
    }
  }
  std::vector<std::vector<VertexId>> parts(workers);
  parallel_chunks(edges.size(), workers, [&](unsigned t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const auto [v, u] = edges[i];
      if (colors[v] == colors[u]) parts[t].push_back(v);
    }
  });
  return merge_losers(parts);
}

std::vector<VertexId> losers_net_based(CsrView g, std::span<const Color> colors,
                                       std::span<const VertexId> /*pending*/,
                                       const std::vector<std::uint8_t>& in_pending,
                                       unsigned workers, bool partial) {
  std::vector<std::vector<VertexId>> parts(workers);
  parallel_chunks(g.num_vertices(), workers, [&](unsigned t, std::size_t b, std::size_t e) {
    for (auto w = static_cast<VertexId>(b); w < e; ++w) {
      const auto net = g.neighbors(w);
      for (std::size_t i = 0; i < net.size(); ++i) {
        const VertexId a = net[i];
        if (!in_pending[a]) continue;
        if (!partial && in_pending[w] && colors[w] == colors[a]) {
          parts[t].push_back(std::min(a, w));
        }
        for (std::size_t j = 0; j < net.size(); ++j) {
          const VertexId c = net[j];
          if (c > a && in_pending[c] && colors[c] == colors[a]) {
            parts[t].push_back(a);
            break;
          }
        }
      }
    }
  });
  return merge_losers(parts);
}

template <class FirstFit>
LocalColorStats color_worklist(CsrView g, std::span<Color> colors,
                               std::span<const VertexId> worklist, const SpeculativeOptions& opts,
                               FirstFit first_fit, LoserScan scan, bool partial) {
  LocalColorStats stats;
  std::vector<VertexId> pending(worklist.begin(), worklist.end());
  std::sort(pending.begin(), pending.end());
  pending.erase(std::unique(pending.begin(), pending.end()), pending.end());
  for (VertexId v : pending) colors[v] = kUncolored;

  const unsigned workers = opts.deterministic ? 1u : std::max(1u, opts.workers);
  if (workers == 1) {
    stats.passes = pending.empty() ? 0 : 1;
    for (VertexId v : pending) colors[v] = first_fit(v, colors.data());
    return stats;
  }

  std::vector<std::uint8_t> in_pending(g.num_vertices(), 0);
  std::vector<Color> fresh;
  while (!pending.empty()) {
    ++stats.passes;
    fresh.assign(pending.size(), kUncolored);
    // Each worker sees the colors fixed before this pass plus its own
    // chunk's choices; other chunks are invisible to it.
    parallel_chunks(pending.size(), workers, [&](unsigned, std::size_t b, std::size_t e) {
      std::vector<Color> view(colors.begin(), colors.end());
      for (std::size_t i = b; i < e; ++i) {
        fresh[i] = first_fit(pending[i], view.data());
        view[pending[i]] = fresh[i];
      }
    });
    for (std::size_t i = 0; i < pending.size(); ++i) {
      colors[pending[i]] = fresh[i];
      in_pending[pending[i]] = 1;
    }
    auto losers = scan(g, colors, pending, in_pending, workers, partial);
    for (VertexId v : pending) in_pending[v] = 0;
    stats.internal_conflicts += losers.size();
    for (VertexId v : losers) colors[v] = kUncolored;
    pending = std::move(losers);
  }
  return stats;
}

}  // namespace

std::string_view to_string(KernelKind k) {
  switch (k) {
    case KernelKind::VertexBased: return "vertex-based";
    case KernelKind::EdgeBased: return "edge-based";
    case KernelKind::NetBasedD2: return "net-based-d2";
  }
  return "?";
}

KernelChoice select_kernel(std::size_t delta_max, KernelChoice cfg) {
  if (cfg.max_degree_threshold == 0) throw ConfigError("kernel threshold must be positive");
  cfg.kind = delta_max > cfg.max_degree_threshold ? KernelKind::EdgeBased : KernelKind::VertexBased;
  return cfg;
}

KernelChoice select_kernel(const GraphStats& stats, KernelChoice cfg) {
  return select_kernel(stats.delta_max, cfg);
}

Color first_fit_d1(CsrView g, VertexId v, const Color* colors, const simd::KernelTable& k) {
  const auto nbrs = g.neighbors(v);
  ForbiddenMask mask;
  for (;;) {
    mask.merge(k.forbid_window(nbrs, colors, mask.base()));
    if (!mask.saturated()) return mask.first_free();
    mask.advance();
  }
}

Color first_fit_d2(CsrView g, VertexId v, const Color* colors, bool partial,
                   const simd::KernelTable& k) {
  const auto nbrs = g.neighbors(v);
  ForbiddenMask mask;
  for (;;) {
    if (!partial) mask.merge(k.forbid_window(nbrs, colors, mask.base()));
    for (VertexId u : nbrs) {
      if (mask.saturated()) break;
      mask.merge(k.forbid_window(g.neighbors(u), colors, mask.base()));
    }
    if (!mask.saturated()) return mask.first_free();
    mask.advance();
  }
}

Coloring serial_greedy(const Graph& g, std::span<const VertexId> order) {
  const std::size_t n = g.num_vertices();
  if (order.size() != n) throw std::invalid_argument("serial_greedy: order is not a permutation");
  std::vector<std::uint8_t> seen(n, 0);
  for (VertexId v : order) {
    if (v >= n || seen[v]) throw std::invalid_argument("serial_greedy: order is not a permutation");
    seen[v] = 1;
  }
  const auto& k = simd::active_kernels();
  Coloring colors(n, kUncolored);
  for (VertexId v : order) colors[v] = first_fit_d1(g.view(), v, colors.data(), k);
  return colors;
}

LocalColorStats speculative_color(CsrView g, std::span<Color> colors,
                                  std::span<const VertexId> worklist, KernelChoice kernel,
                                  SpeculativeOptions opts) {
  const auto& k = kernels_of(opts);
  auto ff = [&](VertexId v, const Color* c) { return first_fit_d1(g, v, c, k); };
  const LoserScan scan =
      kernel.kind == KernelKind::EdgeBased ? &losers_edge_based : &losers_vertex_based;
  return color_worklist(g, colors, worklist, opts, ff, scan, false);
}

LocalColorStats speculative_color_d2(CsrView g, std::span<Color> colors,
                                     std::span<const VertexId> worklist, bool partial,
                                     SpeculativeOptions opts) {
  const auto& k = kernels_of(opts);
  auto ff = [&](VertexId v, const Color* c) { return first_fit_d2(g, v, c, partial, k); };
  return color_worklist(g, colors, worklist, opts, ff, &losers_net_based, partial);
}

unsigned default_workers() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CHROMA_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
  }
  return hw;
}

}  // namespace chroma
