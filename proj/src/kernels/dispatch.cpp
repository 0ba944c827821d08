#include <cstdlib>
#include <string_view>

#include "coronalab/kernels.hpp"

namespace coronalab::kernels {

#if defined(CORONALAB_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif

const KernelTable* avx2_table() {
#if defined(CORONALAB_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &avx2_kernels() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& chosen = [] () -> const KernelTable& {
    const char* forced = std::getenv("CORONA_LAB_SIMD");
    if (forced != nullptr && std::string_view(forced) == "scalar") return scalar_table();
    if (const KernelTable* t = avx2_table()) return *t;
    return scalar_table();
  }();
  return chosen;
}

}  // namespace coronalab::kernels
