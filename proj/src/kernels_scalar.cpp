#include "fresnel/kernels.hpp"

namespace fresnel::kernels {

namespace {

void axpy_scalar(std::size_t n, cplx a, const cplx* x, cplx* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scal_scalar(std::size_t n, cplx a, cplx* x) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

cplx dotc_scalar(std::size_t n, const cplx* x, const cplx* y) {
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

double nrm2sq_scalar(std::size_t n, const cplx* x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::norm(x[i]);
  return acc;
}

void gemm_scalar(std::size_t m, std::size_t k, std::size_t n,
                 const cplx* A, const cplx* B, cplx* C) {
  for (std::size_t i = 0; i < m; ++i) {
    cplx* ci = C + i * n;
    for (std::size_t j = 0; j < n; ++j) ci[j] = cplx{0.0, 0.0};
    const cplx* ai = A + i * k;
    for (std::size_t p = 0; p < k; ++p) {
      const cplx a = ai[p];
      if (a == cplx{0.0, 0.0}) continue;
      const cplx* bp = B + p * n;
      for (std::size_t j = 0; j < n; ++j) ci[j] += a * bp[j];
    }
  }
}

void rot_scalar(std::size_t n, cplx* x, cplx* y, double c, cplx s) {
  const cplx sc = std::conj(s);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx xi = x[i];
    const cplx yi = y[i];
    x[i] = c * xi + s * yi;
    y[i] = -sc * xi + c * yi;
  }
}

}  // namespace

const KernelSet scalar_kernels = {
    axpy_scalar, scal_scalar, dotc_scalar, nrm2sq_scalar,
    gemm_scalar, rot_scalar, "scalar",
};

}  // namespace fresnel::kernels
