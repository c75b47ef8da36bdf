#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "fresnel/cmatrix.hpp"
#include "fresnel/hermitian_eig.hpp"

namespace fresnel {

// Complex amplitudes over the truncated Fock basis |0> ... |N-1>.
struct FockState {
  std::size_t dim = 0;
  std::vector<cplx> amplitudes;

  double norm() const { return vector_norm(amplitudes); }
};

cplx state_inner(const FockState& u, const FockState& v);
// |<u|v>| / (|u| |v|)
double state_fidelity(const FockState& u, const FockState& v);

// The three exponents of a normally ordered Gaussian
//   prefactor * :exp(f a^dag^2 + g a^dag a + h a^2):
struct GaussianExponents {
  cplx prefactor;
  cplx f;
  cplx g;
  cplx h;
};

// a|n> = sqrt(n)|n-1>, adag|n> = sqrt(n+1)|n+1> (top row truncated)
struct LadderPair {
  CMatrix a;
  CMatrix adag;
};
LadderPair ladder_matrices(std::size_t n);

// X = (a + adag)/sqrt(2), P = (a - adag)/(sqrt(2) i)
struct QuadraturePair {
  CMatrix x;
  CMatrix p;
};
QuadraturePair quadrature_matrices(std::size_t n);

// prefactor * exp(f adag^2) * (1+g)^{N} * exp(h a^2); the two exponentials
// are the exact terminating power series (adag^2, a^2 nilpotent after
// truncation). Throws DomainError when 1+g = 0.
// Reliable on the interior trust block; products of large operators at
// N >= 128 should go through fresnel_normal_order instead.
CMatrix normal_ordered_gaussian(const GaussianExponents& ge, std::size_t n);

// exp(scale*H) via eigendecomposition; H must be Hermitian within 1e-10.
// Unitary (to rounding) for purely imaginary scale.
CMatrix exp_hermitian(const CMatrix& h, cplx scale);

// Matrix exponential by Pade-13 scaling and squaring (general square input).
CMatrix exp_general(const CMatrix& g);

// Oscillator eigenfunction psi_n(x) = pi^{-1/4} (2^n n!)^{-1/2} H_n(x) e^{-x^2/2}
// via the stable recurrence. Valid for |x| <= 20, n <= 4096.
double hermite_function(std::size_t n, double x);
// psi_0(x) ... psi_{nmax-1}(x)
std::vector<double> hermite_functions(std::size_t nmax, double x);

// c_n = e^{-|z|^2/2} z^n / sqrt(n!). Sets *truncation_warning when
// |z|^2 > n/4 (amplitude pushed against the cutoff).
FockState coherent_state(cplx z, std::size_t n,
                         bool* truncation_warning = nullptr);

FockState vacuum_state(std::size_t n);

// plain-text dumps, 17 significant digits (bit-exact round trip)
void dump_operator(std::ostream& os, const CMatrix& op);
CMatrix load_operator(std::istream& is);
void dump_state(std::ostream& os, const FockState& st);
FockState load_state(std::istream& is);

// interior comparison block = first dim/4 indices
inline std::size_t interior_dim(std::size_t n) { return n / 4; }

}  // namespace fresnel
