#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace fresnel {

using cplx = std::complex<double>;

// Dense complex matrix, row-major. Arithmetic runs through the kernel layer.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(const std::vector<cplx>& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  cplx* row(std::size_t i) { return data_.data() + i * cols_; }
  const cplx* row(std::size_t i) const { return data_.data() + i * cols_; }
  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }

  CMatrix operator*(const CMatrix& rhs) const;
  CMatrix operator+(const CMatrix& rhs) const;
  CMatrix operator-(const CMatrix& rhs) const;
  CMatrix& operator+=(const CMatrix& rhs);
  CMatrix& operator-=(const CMatrix& rhs);
  CMatrix& operator*=(cplx a);
  CMatrix operator*(cplx a) const;

  CMatrix adjoint() const;
  CMatrix transpose() const;
  CMatrix conj() const;

  // scale row/column i by d[i]
  void scale_rows(const std::vector<cplx>& d);
  void scale_cols(const std::vector<cplx>& d);

  std::vector<cplx> apply(const std::vector<cplx>& v) const;

  double frobenius_norm() const;
  double max_abs() const;
  // norms over the leading k x k block
  double interior_frobenius(std::size_t k) const;
  double interior_max_abs(std::size_t k) const;

  // max |A - A^dagger| entry (0 for exactly Hermitian)
  double hermiticity_defect() const;

  bool same_shape(const CMatrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

inline CMatrix operator*(cplx a, const CMatrix& m) { return m * a; }

// vector helpers shared across modules
double vector_norm(const std::vector<cplx>& v);
cplx vector_inner(const std::vector<cplx>& u, const std::vector<cplx>& v);

}  // namespace fresnel
