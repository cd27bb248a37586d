#include "kernels_impl.hpp"

namespace chroma::simd::detail {

std::uint64_t forbid_window_scalar(std::span<const VertexId> nbrs, const Color* colors,
                                   Color base) {
  std::uint64_t bits = 0;
  for (VertexId u : nbrs) {
    // 64-bit difference: colors below base wrap far past the window.
    const std::uint64_t offset = std::uint64_t{colors[u]} - base;
    if (offset < 64) bits |= std::uint64_t{1} << offset;
  }
  return bits;
}

std::size_t find_color_scalar(std::span<const VertexId> nbrs, const Color* colors, Color color) {
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    if (colors[nbrs[i]] == color) return i;
  }
  return nbrs.size();
}

}  // namespace chroma::simd::detail
