#include "fresnel/hermitian_eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fresnel/errors.hpp"
#include "fresnel/kernels.hpp"

namespace fresnel {

namespace {

double offdiag_norm(const CMatrix& A) {
  const std::size_t n = A.rows();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) acc += std::norm(A(i, j));
  return std::sqrt(2.0 * acc);
}

}  // namespace

EigenSystem hermitian_eigen(const CMatrix& H, double herm_tol) {
  const std::size_t n = H.rows();
  if (H.cols() != n) throw DomainError("hermitian_eigen: matrix not square");
  const double scale = std::max(H.max_abs(), 1e-300);
  if (H.hermiticity_defect() > herm_tol * std::max(1.0, scale))
    throw DomainError("hermitian_eigen: input not Hermitian within tolerance");

  CMatrix A = H;
  // symmetrize exactly so rotations keep the Hermitian structure
  for (std::size_t i = 0; i < n; ++i) {
    A(i, i) = cplx{A(i, i).real(), 0.0};
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx v = 0.5 * (A(i, j) + std::conj(A(j, i)));
      A(i, j) = v;
      A(j, i) = std::conj(v);
    }
  }
  CMatrix V = CMatrix::identity(n);
  const auto& k = kernels::active();

  const double tol = 1e-15 * scale * static_cast<double>(n);
  const int max_sweeps = 64;
  // work on the transpose-free row layout: rotate rows of A, then columns via
  // the conjugate rotation on rows of A^T stored implicitly (A stays full).
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (offdiag_norm(A) <= tol) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = A(p, q);
        const double mag = std::abs(apq);
        if (mag <= 1e-300) continue;
        const double app = A(p, p).real();
        const double aqq = A(q, q).real();
        // phase u makes the 2x2 problem real; then classic Jacobi angle
        const cplx u = apq / mag;
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const cplx s = (t * c) * u;
        // A <- J^H A J with the plane block J = [[c, s],[-conj(s), c]].
        // left action:  row_p' = c*row_p - s*row_q,
        //               row_q' = conj(s)*row_p + c*row_q
        k.rot(n, A.row(p), A.row(q), c, -s);
        // right action: col_p' = c*col_p - conj(s)*col_q,
        //               col_q' = s*col_p + c*col_q
        for (std::size_t i = 0; i < n; ++i) {
          const cplx aip = A(i, p), aiq = A(i, q);
          A(i, p) = c * aip - std::conj(s) * aiq;
          A(i, q) = s * aip + c * aiq;
        }
        // accumulate V <- V J (same column update)
        for (std::size_t i = 0; i < n; ++i) {
          const cplx vip = V(i, p), viq = V(i, q);
          V(i, p) = c * vip - std::conj(s) * viq;
          V(i, q) = s * vip + c * viq;
        }
        A(p, q) = cplx{0.0, 0.0};
        A(q, p) = cplx{0.0, 0.0};
      }
    }
  }

  EigenSystem es;
  es.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) es.values[i] = A(i, i).real();
  // sort ascending, permute columns of V accordingly
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return es.values[a] < es.values[b];
  });
  std::vector<double> w(n);
  CMatrix Vs(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    w[j] = es.values[idx[j]];
    for (std::size_t i = 0; i < n; ++i) Vs(i, j) = V(i, idx[j]);
  }
  es.values = std::move(w);
  es.vectors = std::move(Vs);
  return es;
}

CMatrix eigen_apply(const EigenSystem& es, const std::vector<cplx>& factors) {
  CMatrix scaled = es.vectors;  // scaled = V * diag(factors)
  scaled.scale_cols(factors);
  return scaled * es.vectors.adjoint();
}

}  // namespace fresnel
