#pragma once

#include <complex>
#include <cstddef>
#include <string>

namespace fresnel::kernels {

using cplx = std::complex<double>;

// Data-parallel complex kernels. Scalar reference implementations live in
// kernels_scalar.cpp; AVX2+FMA variants in kernels_avx2.cpp. The active set
// is chosen once at startup from CPUID (see dispatch()); setting the
// environment variable FRESNEL_NO_SIMD=1 forces the scalar set.
struct KernelSet {
  // y[0:n) += a * x[0:n)
  void (*axpy)(std::size_t n, cplx a, const cplx* x, cplx* y);
  // x[0:n) *= a
  void (*scal)(std::size_t n, cplx a, cplx* x);
  // sum conj(x[i]) * y[i]
  cplx (*dotc)(std::size_t n, const cplx* x, const cplx* y);
  // sum |x[i]|^2
  double (*nrm2sq)(std::size_t n, const cplx* x);
  // C[0:m,0:n) = A[0:m,0:k) * B[0:k,0:n), row-major, C must not alias A or B
  void (*gemm)(std::size_t m, std::size_t k, std::size_t n,
               const cplx* A, const cplx* B, cplx* C);
  // plane rotation with real c and complex s:
  //   x' = c*x + s*y,  y' = -conj(s)*x + c*y
  void (*rot)(std::size_t n, cplx* x, cplx* y, double c, cplx s);
  const char* name;
};

extern const KernelSet scalar_kernels;
#if defined(__x86_64__) || defined(_M_X64)
extern const KernelSet avx2_kernels;
#endif

// Active kernel set (resolved once, thread-safe).
const KernelSet& active();

// Name of the active set ("scalar" or "avx2").
std::string active_name();

}  // namespace fresnel::kernels
