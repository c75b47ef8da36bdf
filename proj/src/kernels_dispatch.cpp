#include <cstdlib>

#include "fresnel/kernels.hpp"

namespace fresnel::kernels {

namespace {

const KernelSet& resolve() {
  const char* env = std::getenv("FRESNEL_NO_SIMD");
  if (env != nullptr && env[0] != '\0' && env[0] != '0') return scalar_kernels;
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return avx2_kernels;
#endif
  return scalar_kernels;
}

}  // namespace

const KernelSet& active() {
  static const KernelSet& set = resolve();
  return set;
}

std::string active_name() { return active().name; }

}  // namespace fresnel::kernels
