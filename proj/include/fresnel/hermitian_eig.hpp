#pragma once

#include <vector>

#include "fresnel/cmatrix.hpp"

namespace fresnel {

struct EigenSystem {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // columns are eigenvectors
};

// Eigendecomposition of a Hermitian matrix by cyclic Jacobi with complex
// plane rotations. The accumulated vector matrix is a product of unitaries,
// so it is orthonormal to rounding. Throws DomainError if the input is not
// Hermitian within `herm_tol`.
EigenSystem hermitian_eigen(const CMatrix& H, double herm_tol = 1e-10);

// V * diag(f(values)) * V^dagger for a function given as per-value factors.
CMatrix eigen_apply(const EigenSystem& es, const std::vector<cplx>& factors);

}  // namespace fresnel
