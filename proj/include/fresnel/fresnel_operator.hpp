#pragma once

#include <cstddef>
#include <vector>

#include "fresnel/cmatrix.hpp"
#include "fresnel/fock_engine.hpp"
#include "fresnel/matrix_optics.hpp"

namespace fresnel {

enum class FresnelRoute { NormalOrder, Canonical };

struct FresnelBuild {
  RayMatrix matrix;
  std::size_t dim;
  FresnelRoute route;
  CMatrix op;
};

// Normally ordered data of F(A,B,C): prefactor sqrt(2/t), f, g, h with
// t = A + D + i(B - C). Principal branch for the square root.
GaussianExponents fresnel_exponents(const RayMatrix& m);

// The Fresnel operator on the truncated Fock space. Built from the phase /
// squeeze (polar) splitting of the ray matrix: the rotation factor is
// diagonal in the Fock basis, the positive-squeeze factor is the
// exponential of a Hermitian quadratic generator handled by one cached
// eigendecomposition per dimension. The global phase is pinned to the
// principal-branch vacuum amplitude sqrt(2/t), so the result carries the
// same branch convention as the normally ordered closed form.
CMatrix fresnel_normal_order(const RayMatrix& m, std::size_t n);

// Canonical product exp(i C/(2A) X^2) exp(-i/2 (XP+PX) ln A)
// exp(-i B/(2A) P^2); requires A > 0 (DomainError otherwise).
CMatrix fresnel_canonical(const RayMatrix& m, std::size_t n);

FresnelBuild build_fresnel(const RayMatrix& m, std::size_t n, FresnelRoute r);

// exp(i c/2 X^2)
CMatrix quadratic_phase(double c, std::size_t n);
// exp(-i b/2 P^2)
CMatrix free_propagator(double b, std::size_t n);
// exp(-i/2 (XP+PX) ln A); A > 0
CMatrix squeeze_operator(double a, std::size_t n);

// (2 pi i B)^{-1/2} exp( i/(2B) (A x1^2 - 2 x2 x1 + D x2^2) );
// PoleError when |B| < 1e-12 (delta-kernel limit out of scope).
cplx kernel_analytic(const RayMatrix& m, double x2, double x1);

// Truncated coordinate-basis matrix element
//   sum_{m,n < nmax} w_m psi_m(x2) op[m][n] w_n psi_n(x1),
// apodized with the smooth spectral window w_n = exp(-(2n/nmax)^8); the
// window suppresses the band-edge ringing of the hard Hermite sum, which
// does not converge pointwise at these truncations.
cplx kernel_from_fock(const CMatrix& op, double x2, double x1,
                      std::size_t nmax);

struct KernelComparison {
  std::vector<double> grid;                // sample positions (both axes)
  std::vector<std::vector<cplx>> analytic; // [i_x2][i_x1]
  std::vector<std::vector<cplx>> fock;     // phase-aligned reconstruction
  cplx phase;                              // fitted global phase
  double max_abs_deviation;
};

// compares on an npts x npts uniform grid over [lo, hi]^2
KernelComparison compare_kernels(const RayMatrix& m, const CMatrix& op,
                                 double lo, double hi, std::size_t npts);

// g(x2) = int K(x2, x1) f(x1) dx1 by trapezoid on the given uniform grid;
// output sampled on the same grid. Throws NumericError with the required
// sample count when the chirp advances more than pi per sample.
std::vector<cplx> fresnel_transform_numeric(const RayMatrix& m,
                                            const std::vector<cplx>& field,
                                            double xmin, double dx);

struct MultiplicationCheck {
  double residual;  // interior Frobenius of F2 F1 - phase * F12
  cplx phase;       // <0| F12^dag F2 F1 |0>, normalized to unit modulus
};

MultiplicationCheck multiplication_check(const RayMatrix& m2,
                                         const RayMatrix& m1, std::size_t n);

// || op^dag op - I ||_F over the leading k x k block
double unitarity_residual(const CMatrix& op, std::size_t k);

// global phase of `ref` relative to `other`, taken from the vacuum element
// when nonzero, else the largest-magnitude interior element of `ref`.
cplx relative_phase(const CMatrix& ref, const CMatrix& other, std::size_t k);

// Squeeze trust radius: |r| of abcd_to_sr bounded so that truncated
// operator products at dim >= 128 retain interior accuracy ~1e-9.
inline constexpr double kSqueezeTrustRadius = 0.5;

}  // namespace fresnel
