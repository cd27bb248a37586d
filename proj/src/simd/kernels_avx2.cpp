// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <bit>

#include "kernels_impl.hpp"

namespace chroma::simd::detail {

namespace {

inline __m256i gather8(const VertexId* ids, const Color* colors) {
  const __m256i idx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(ids));
  return _mm256_i32gather_epi32(reinterpret_cast<const int*>(colors), idx, 4);
}

}  // namespace

std::uint64_t forbid_window_avx2(std::span<const VertexId> nbrs, const Color* colors,
                                 Color base) {
  const std::size_t n = nbrs.size();
  const VertexId* ids = nbrs.data();
  const __m256i vbase = _mm256_set1_epi64x(static_cast<long long>(base));
  const __m256i one = _mm256_set1_epi64x(1);
  __m256i acc_lo = _mm256_setzero_si256();
  __m256i acc_hi = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    // Widen before subtracting so colors below base wrap to offsets >= 64;
    // vpsllvq yields zero for every out-of-window offset.
    const __m256i c = gather8(ids + i, colors);
    const __m256i lo = _mm256_sub_epi64(_mm256_cvtepu32_epi64(_mm256_castsi256_si128(c)), vbase);
    const __m256i hi = _mm256_sub_epi64(_mm256_cvtepu32_epi64(_mm256_extracti128_si256(c, 1)), vbase);
    acc_lo = _mm256_or_si256(acc_lo, _mm256_sllv_epi64(one, lo));
    acc_hi = _mm256_or_si256(acc_hi, _mm256_sllv_epi64(one, hi));
  }
  const __m256i acc = _mm256_or_si256(acc_lo, acc_hi);
  const __m128i half = _mm_or_si128(_mm256_castsi256_si128(acc), _mm256_extracti128_si256(acc, 1));
  std::uint64_t bits = static_cast<std::uint64_t>(_mm_cvtsi128_si64(half)) |
                       static_cast<std::uint64_t>(_mm_extract_epi64(half, 1));
  if (i < n) bits |= forbid_window_scalar(nbrs.subspan(i), colors, base);
  return bits;
}

std::size_t find_color_avx2(std::span<const VertexId> nbrs, const Color* colors, Color color) {
  const std::size_t n = nbrs.size();
  const VertexId* ids = nbrs.data();
  const __m256i target = _mm256_set1_epi32(static_cast<int>(color));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i eq = _mm256_cmpeq_epi32(gather8(ids + i, colors), target);
    const auto mask = static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(eq)));
    if (mask != 0) return i + static_cast<std::size_t>(std::countr_zero(mask));
  }
  return i + find_color_scalar(nbrs.subspan(i), colors, color);
}

}  // namespace chroma::simd::detail
