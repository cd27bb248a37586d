#pragma once

// Inner loops of coloring and conflict scanning: gather the colors of a
// neighbor list and either fold them into a 64-color forbidden window or
// find the first neighbor holding a given color. Each routine has a scalar
// reference and, on x86-64, an AVX2 variant chosen at runtime.

#include <cstdint>
#include <span>
#include <string_view>

#include "chroma/types.hpp"

namespace chroma::simd {

struct KernelTable {
  std::string_view name;

  /// Bit i of the result is set iff some neighbor has color base+i.
  /// base >= 1, so uncolored neighbors never contribute.
  std::uint64_t (*forbid_window)(std::span<const VertexId> nbrs, const Color* colors, Color base);

  /// Position of the first neighbor whose color equals `color`, or
  /// nbrs.size() if there is none.
  std::size_t (*find_color)(std::span<const VertexId> nbrs, const Color* colors, Color color);
};

const KernelTable& scalar_kernels();

/// nullptr when the AVX2 variants were not built or the CPU lacks AVX2.
const KernelTable* avx2_kernels();

/// Table used by the library. CHROMA_SIMD=scalar|avx2|auto overrides the
/// choice (read once); unsupported requests fall back to scalar.
const KernelTable& active_kernels();

}  // namespace chroma::simd
