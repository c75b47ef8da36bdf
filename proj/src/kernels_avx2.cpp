#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "fresnel/kernels.hpp"

// AVX2+FMA variants. Two complex doubles per 256-bit lane, interleaved
// [re0 im0 re1 im1]. Complex multiply-accumulate uses the permute/fmaddsub
// pattern: (ar+i*ai)*(br+i*bi) = [ar*br - ai*bi, ar*bi + ai*br].
// Compiled with -mavx2 -mfma for this translation unit only; selected at
// runtime via CPUID, so the library itself stays runnable on older CPUs.

namespace fresnel::kernels {

namespace {

inline __m256d cmul_acc(__m256d acc, __m256d ar, __m256d ai, __m256d b) {
  __m256d bswap = _mm256_permute_pd(b, 0x5);
  return _mm256_add_pd(acc, _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, bswap)));
}

void axpy_avx2(std::size_t n, cplx a, const cplx* x, cplx* y) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  auto* yd = reinterpret_cast<double*>(y);
  const auto* xd = reinterpret_cast<const double*>(x);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    _mm256_storeu_pd(yd + 2 * i, cmul_acc(yv, ar, ai, xv));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void scal_avx2(std::size_t n, cplx a, cplx* x) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  auto* xd = reinterpret_cast<double*>(x);
  std::size_t i = 0;
  const __m256d zero = _mm256_setzero_pd();
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    _mm256_storeu_pd(xd + 2 * i, cmul_acc(zero, ar, ai, xv));
  }
  for (; i < n; ++i) x[i] *= a;
}

cplx dotc_avx2(std::size_t n, const cplx* x, const cplx* y) {
  // conj(x)*y: re = xr*yr + xi*yi, im = xr*yi - xi*yr
  const auto* xd = reinterpret_cast<const double*>(x);
  const auto* yd = reinterpret_cast<const double*>(y);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    __m256d xr = _mm256_shuffle_pd(xv, xv, 0x0);  // [xr0 xr0 xr1 xr1]
    __m256d xi = _mm256_shuffle_pd(xv, xv, 0xF);  // [xi0 xi0 xi1 xi1]
    __m256d yswap = _mm256_permute_pd(yv, 0x5);   // [yi0 yr0 yi1 yr1]
    // fmsubadd: even lanes xr*yr + xi*yi, odd lanes xr*yi - xi*yr
    acc = _mm256_add_pd(acc, _mm256_fmsubadd_pd(xr, yv, _mm256_mul_pd(xi, yswap)));
  }
  alignas(32) double buf[4];
  _mm256_store_pd(buf, acc);
  cplx out{buf[0] + buf[2], buf[1] + buf[3]};
  for (; i < n; ++i) out += std::conj(x[i]) * y[i];
  return out;
}

double nrm2sq_avx2(std::size_t n, const cplx* x) {
  const auto* xd = reinterpret_cast<const double*>(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    acc = _mm256_fmadd_pd(xv, xv, acc);
  }
  alignas(32) double buf[4];
  _mm256_store_pd(buf, acc);
  double out = buf[0] + buf[1] + buf[2] + buf[3];
  for (; i < n; ++i) out += std::norm(x[i]);
  return out;
}

void gemm_avx2(std::size_t m, std::size_t k, std::size_t n,
               const cplx* A, const cplx* B, cplx* C) {
  for (std::size_t i = 0; i < m; ++i) {
    cplx* ci = C + i * n;
    auto* cd = reinterpret_cast<double*>(ci);
    for (std::size_t j = 0; j < n; ++j) ci[j] = cplx{0.0, 0.0};
    const cplx* ai = A + i * k;
    std::size_t p = 0;
    // two rows of B per pass to cut C traffic
    for (; p + 2 <= k; p += 2) {
      const cplx a0 = ai[p], a1 = ai[p + 1];
      if (a0 == cplx{0.0, 0.0} && a1 == cplx{0.0, 0.0}) continue;
      const auto* b0 = reinterpret_cast<const double*>(B + p * n);
      const auto* b1 = reinterpret_cast<const double*>(B + (p + 1) * n);
      const __m256d a0r = _mm256_set1_pd(a0.real()), a0i = _mm256_set1_pd(a0.imag());
      const __m256d a1r = _mm256_set1_pd(a1.real()), a1i = _mm256_set1_pd(a1.imag());
      std::size_t j = 0;
      for (; j + 2 <= n; j += 2) {
        __m256d cv = _mm256_loadu_pd(cd + 2 * j);
        cv = cmul_acc(cv, a0r, a0i, _mm256_loadu_pd(b0 + 2 * j));
        cv = cmul_acc(cv, a1r, a1i, _mm256_loadu_pd(b1 + 2 * j));
        _mm256_storeu_pd(cd + 2 * j, cv);
      }
      for (; j < n; ++j)
        ci[j] += a0 * (B + p * n)[j] + a1 * (B + (p + 1) * n)[j];
    }
    for (; p < k; ++p) {
      const cplx a = ai[p];
      if (a == cplx{0.0, 0.0}) continue;
      axpy_avx2(n, a, B + p * n, ci);
    }
  }
}

void rot_avx2(std::size_t n, cplx* x, cplx* y, double c, cplx s) {
  const __m256d cv = _mm256_set1_pd(c);
  const __m256d sr = _mm256_set1_pd(s.real());
  const __m256d si = _mm256_set1_pd(s.imag());
  auto* xd = reinterpret_cast<double*>(x);
  auto* yd = reinterpret_cast<double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    __m256d xn = cmul_acc(_mm256_mul_pd(cv, xv), sr, si, yv);
    // -conj(s)*x: re/im parts via cmul with (-sr, si)
    __m256d yn = cmul_acc(_mm256_mul_pd(cv, yv), _mm256_set1_pd(-s.real()),
                          _mm256_set1_pd(s.imag()), xv);
    _mm256_storeu_pd(xd + 2 * i, xn);
    _mm256_storeu_pd(yd + 2 * i, yn);
  }
  const cplx sc = std::conj(s);
  for (; i < n; ++i) {
    const cplx xi = x[i], yi = y[i];
    x[i] = c * xi + s * yi;
    y[i] = -sc * xi + c * yi;
  }
}

}  // namespace

const KernelSet avx2_kernels = {
    axpy_avx2, scal_avx2, dotc_avx2, nrm2sq_avx2, gemm_avx2, rot_avx2, "avx2",
};

}  // namespace fresnel::kernels

#endif  // x86_64
