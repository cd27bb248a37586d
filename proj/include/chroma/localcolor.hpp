#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string_view>

#include "chroma/graph.hpp"
#include "chroma/simd/kernels.hpp"

namespace chroma {

enum class KernelKind { VertexBased, EdgeBased, NetBasedD2 };

/// vertex-based, edge-based, net-based-d2.
std::string_view to_string(KernelKind k);

struct KernelChoice {
  KernelKind kind = KernelKind::VertexBased;
  std::size_t max_degree_threshold = 6000;
};

/// Edge-based iff delta_max exceeds the threshold, vertex-based otherwise.
/// Throws ConfigError for a zero threshold.
KernelChoice select_kernel(std::size_t delta_max, KernelChoice cfg);
KernelChoice select_kernel(const GraphStats& stats, KernelChoice cfg);

/// Forbidden colors restricted to the window [base, base+64).
class ForbiddenMask {
 public:
  explicit ForbiddenMask(Color base = 1) noexcept : base_(base) {}

  Color base() const noexcept { return base_; }
  std::uint64_t bits() const noexcept { return bits_; }

  void forbid(Color c) noexcept {
    const Color offset = c - base_;
    if (offset < 64) bits_ |= std::uint64_t{1} << offset;
  }
  void merge(std::uint64_t bits) noexcept { bits_ |= bits; }
  bool saturated() const noexcept { return bits_ == ~std::uint64_t{0}; }
  /// Smallest color of the window not forbidden. Requires !saturated().
  Color first_free() const noexcept { return base_ + static_cast<Color>(std::countr_one(bits_)); }
  void advance() noexcept {
    base_ += 64;
    bits_ = 0;
  }

 private:
  Color base_;
  std::uint64_t bits_ = 0;
};

/// Smallest color absent from v's neighbors.
Color first_fit_d1(CsrView g, VertexId v, const Color* colors, const simd::KernelTable& k);

/// Smallest color absent from v's two-hop neighborhood (and from its
/// neighbors too unless `partial`). colors[v] must be 0.
Color first_fit_d2(CsrView g, VertexId v, const Color* colors, bool partial,
                   const simd::KernelTable& k);

/// Greedy first-fit over `order`, which must be a permutation of the
/// vertices (std::invalid_argument otherwise).
Coloring serial_greedy(const Graph& g, std::span<const VertexId> order);

struct SpeculativeOptions {
  /// Serialize the speculate phase in ascending vertex order.
  bool deterministic = true;
  unsigned workers = 1;
  /// nullptr selects simd::active_kernels().
  const simd::KernelTable* kernels = nullptr;
};

struct LocalColorStats {
  std::size_t passes = 0;
  std::size_t internal_conflicts = 0;
};

/// Colors every worklist vertex (reset to 0 on entry) by first-fit against
/// the current colors of all other vertices, which stay untouched. With
/// several workers the worklist is colored speculatively in chunks and
/// conflicts among newly colored vertices are fixed by uncoloring the
/// smaller index, until none remain.
LocalColorStats speculative_color(CsrView g, std::span<Color> colors,
                                  std::span<const VertexId> worklist, KernelChoice kernel,
                                  SpeculativeOptions opts = {});

/// Distance-2 counterpart with net-based conflict detection: every vertex
/// acts as a net whose members must differ pairwise (and from the net
/// vertex itself unless `partial`).
LocalColorStats speculative_color_d2(CsrView g, std::span<Color> colors,
                                     std::span<const VertexId> worklist, bool partial,
                                     SpeculativeOptions opts = {});

/// Worker count from CHROMA_THREADS, else hardware concurrency (>= 1).
unsigned default_workers();

}  // namespace chroma
