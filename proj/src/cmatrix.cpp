#include "fresnel/cmatrix.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "fresnel/kernels.hpp"

namespace fresnel {

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = cplx{1.0, 0.0};
  return out;
}

CMatrix CMatrix::diagonal(const std::vector<cplx>& d) {
  CMatrix out(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out(i, i) = d[i];
  return out;
}

CMatrix CMatrix::operator*(const CMatrix& rhs) const {
  assert(cols_ == rhs.rows_);
  CMatrix out(rows_, rhs.cols_);
  kernels::active().gemm(rows_, cols_, rhs.cols_, data_.data(), rhs.data(),
                         out.data());
  return out;
}

CMatrix CMatrix::operator+(const CMatrix& rhs) const {
  CMatrix out = *this;
  out += rhs;
  return out;
}

CMatrix CMatrix::operator-(const CMatrix& rhs) const {
  CMatrix out = *this;
  out -= rhs;
  return out;
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
  assert(same_shape(rhs));
  kernels::active().axpy(data_.size(), cplx{1.0, 0.0}, rhs.data(), data());
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
  assert(same_shape(rhs));
  kernels::active().axpy(data_.size(), cplx{-1.0, 0.0}, rhs.data(), data());
  return *this;
}

CMatrix& CMatrix::operator*=(cplx a) {
  kernels::active().scal(data_.size(), a, data());
  return *this;
}

CMatrix CMatrix::operator*(cplx a) const {
  CMatrix out = *this;
  out *= a;
  return out;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      out(j, i) = std::conj((*this)(i, j));
  return out;
}

CMatrix CMatrix::transpose() const {
  CMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

CMatrix CMatrix::conj() const {
  CMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i)
    out.data()[i] = std::conj(data_[i]);
  return out;
}

void CMatrix::scale_rows(const std::vector<cplx>& d) {
  assert(d.size() == rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    kernels::active().scal(cols_, d[i], row(i));
}

void CMatrix::scale_cols(const std::vector<cplx>& d) {
  assert(d.size() == cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    cplx* r = row(i);
    for (std::size_t j = 0; j < cols_; ++j) r[j] *= d[j];
  }
}

std::vector<cplx> CMatrix::apply(const std::vector<cplx>& v) const {
  assert(v.size() == cols_);
  std::vector<cplx> out(rows_, cplx{0.0, 0.0});
  kernels::active().gemm(rows_, cols_, 1, data_.data(), v.data(), out.data());
  return out;
}

double CMatrix::frobenius_norm() const {
  return std::sqrt(kernels::active().nrm2sq(data_.size(), data_.data()));
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& v : data_) m = std::max(m, std::abs(v));
  return m;
}

double CMatrix::interior_frobenius(std::size_t k) const {
  k = std::min({k, rows_, cols_});
  double acc = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    acc += kernels::active().nrm2sq(k, row(i));
  return std::sqrt(acc);
}

double CMatrix::interior_max_abs(std::size_t k) const {
  k = std::min({k, rows_, cols_});
  double m = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      m = std::max(m, std::abs((*this)(i, j)));
  return m;
}

double CMatrix::hermiticity_defect() const {
  double m = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return m;
}

double vector_norm(const std::vector<cplx>& v) {
  return std::sqrt(kernels::active().nrm2sq(v.size(), v.data()));
}

cplx vector_inner(const std::vector<cplx>& u, const std::vector<cplx>& v) {
  assert(u.size() == v.size());
  return kernels::active().dotc(u.size(), u.data(), v.data());
}

}  // namespace fresnel
