#include <cstdlib>
#include <string_view>

#include "dcnewton/kernels.hpp"

namespace dcnewton::kernels {

#if defined(DCNEWTON_HAVE_AVX2)
const KernelTable* avx2_table();
#endif

const KernelTable* avx2() {
#if defined(DCNEWTON_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& chosen = [&]() -> const KernelTable& {
    const char* env = std::getenv("DCNEWTON_KERNELS");
    if (env != nullptr && std::string_view(env) == "scalar") return scalar();
    if (const KernelTable* vec = avx2()) return *vec;
    return scalar();
  }();
  return chosen;
}

}  // namespace dcnewton::kernels
