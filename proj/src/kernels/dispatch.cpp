#include <cstdlib>
#include <string_view>

#include "sofic/kernels.hpp"

namespace sofic::kernels {

#if defined(SOFIC_HAVE_AVX2_KERNELS)
const KernelTable& avx2_kernel_table();
#endif

const KernelTable* avx2_kernels() {
#if defined(SOFIC_HAVE_AVX2_KERNELS)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &avx2_kernel_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable* selected = [] {
    const char* forced = std::getenv("SOFIC_SIMD");
    if (forced != nullptr && std::string_view(forced) == "scalar") return &scalar_kernels();
    const KernelTable* simd = avx2_kernels();
    return simd != nullptr ? simd : &scalar_kernels();
  }();
  return *selected;
}

}  // namespace sofic::kernels
