#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace chroma::simd {
namespace {

constexpr KernelTable kScalar{"scalar", &detail::forbid_window_scalar, &detail::find_color_scalar};

#if defined(CHROMA_HAVE_AVX2_KERNELS)
constexpr KernelTable kAvx2{"avx2", &detail::forbid_window_avx2, &detail::find_color_avx2};

bool cpu_has_avx2() noexcept {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
}
#endif

const KernelTable& choose() {
  const char* env = std::getenv("CHROMA_SIMD");
  const std::string_view want = env ? env : "auto";
  const KernelTable* avx2 = avx2_kernels();
  if (want == "scalar") return kScalar;
  if (avx2 != nullptr && (want == "auto" || want == "avx2")) return *avx2;
  return kScalar;
}

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

const KernelTable* avx2_kernels() {
#if defined(CHROMA_HAVE_AVX2_KERNELS)
  static const bool supported = cpu_has_avx2();
  return supported ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() {
  static const KernelTable& table = choose();
  return table;
}

}  // namespace chroma::simd
