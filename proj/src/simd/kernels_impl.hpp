#pragma once

#include "chroma/simd/kernels.hpp"

namespace chroma::simd::detail {

std::uint64_t forbid_window_scalar(std::span<const VertexId> nbrs, const Color* colors,
                                   Color base);
std::size_t find_color_scalar(std::span<const VertexId> nbrs, const Color* colors, Color color);

#if defined(CHROMA_HAVE_AVX2_KERNELS)
std::uint64_t forbid_window_avx2(std::span<const VertexId> nbrs, const Color* colors, Color base);
std::size_t find_color_avx2(std::span<const VertexId> nbrs, const Color* colors, Color color);
#endif

}  // namespace chroma::simd::detail
