#include "fqess/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace fqess::kernels {

#ifndef FQESS_HAVE_AVX2_TU
// Build without the AVX2 translation unit: the accelerated table is never
// selected, but the symbol must still exist.
const KernelSet& avx2_kernels() { return scalar_kernels(); }
#endif

bool avx2_available() {
#ifdef FQESS_HAVE_AVX2_TU
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelSet& active_kernels() {
  static const KernelSet* selected = [] {
    const char* forced = std::getenv("FQESS_KERNELS");
    if (forced != nullptr && std::strcmp(forced, "scalar") == 0) {
      return &scalar_kernels();
    }
    return avx2_available() ? &avx2_kernels() : &scalar_kernels();
  }();
  return *selected;
}

}  // namespace fqess::kernels
