#include <cstdlib>
#include <cstring>

#include "jorca/kernels/gain_batch.hpp"

namespace jorca::kernels {

bool avx2_available() {
#if JORCA_HAVE_AVX2
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

GainBatchFn select_gain_batch() {
#if JORCA_HAVE_AVX2
  const char* mode = std::getenv("JORCA_SIMD");
  if (mode != nullptr && std::strcmp(mode, "scalar") == 0) {
    return &gain_batch_scalar;
  }
  if (avx2_available()) {
    return &gain_batch_avx2;
  }
#endif
  return &gain_batch_scalar;
}

const char* gain_batch_backend() {
#if JORCA_HAVE_AVX2
  return select_gain_batch() == &gain_batch_avx2 ? "avx2" : "scalar";
#else
  return "scalar";
#endif
}

}  // namespace jorca::kernels
