#pragma once

#include <cstddef>

#include "fresnel/fock_engine.hpp"
#include "fresnel/matrix_optics.hpp"

namespace fresnel {

// Squeezed vacuum in closed form: prefactor * exp(mu adag^2)|0> with
// mu = (q - i)/(2(q + i)); only even Fock amplitudes are nonzero.
struct SqueezedVacuumDescriptor {
  QParam q;
  cplx prefactor;
  std::size_t dim;
};

// q = -(A + iB)/(C + iD); Im q = 1/(C^2 + D^2) > 0 by AD - BC = 1.
QParam q_parameter(const RayMatrix& m);

// descriptor of F(m)|0>: q from q_parameter, prefactor sqrt(-2/(C+iD)/(q+i))
SqueezedVacuumDescriptor descriptor_from_matrix(const RayMatrix& m,
                                                std::size_t n);

// expand the descriptor: c_{2k} = prefactor mu^k sqrt((2k)!)/k!, odd zero.
// Throws DomainError when Im q <= 0 (non-normalizable).
FockState squeezed_vacuum_from_q(const SqueezedVacuumDescriptor& d);

// F(m)|0> through the operator route
FockState vacuum_output(const RayMatrix& m, std::size_t n);

// Quantum optical ABCD law: new q by the Mobius map of the composed matrix,
// new prefactor from (C'', D''). PoleError if C' q - D' vanishes.
SqueezedVacuumDescriptor abcd_law_apply(const RayMatrix& m2,
                                        const SqueezedVacuumDescriptor& in);

// Damped (mass-varying) oscillator H = e^{-2 gamma t} P^2/2
// + omega0^2 e^{2 gamma t} X^2/2; underdamped regime omega0 > gamma.
struct DampedOscillatorParams {
  double gamma;
  double omega0;
  double t;

  DampedOscillatorParams(double gamma, double omega0, double t);
  double omega_squared() const { return omega0 * omega0 - gamma * gamma; }
};

// closed-form evolved vacuum:
//   sqrt(2 e^{-gt} / (e^{-2gt} + i g + 1))
//     exp[ (e^{-2gt} - 1 - ig) / (2 (e^{-2gt} + 1 + ig)) adag^2 ] |0>
FockState damped_state_closed_form(const DampedOscillatorParams& p,
                                   std::size_t n);

// u(t)   = e^{ i g X^2 / 2} e^{-i g t (XP+PX)/2}
// u^{-1} = e^{ i g t (XP+PX)/2} e^{-i g X^2 / 2}
CMatrix u_evolution(const DampedOscillatorParams& p, std::size_t n);
CMatrix u_inverse(const DampedOscillatorParams& p, std::size_t n);

struct HeisenbergResiduals {
  double residual_x;  // || u X u^-1 - e^{-gt} X ||_interior
  double residual_p;  // || u P u^-1 - (e^{gt} P - g e^{gt} X) ||_interior
};
HeisenbergResiduals heisenberg_transform_check(const DampedOscillatorParams& p,
                                               std::size_t n);

// || u H u^-1 - i u du^-1/dt - (P^2/2 + omega^2 X^2/2) ||_interior with the
// analytic derivative du^-1/dt = i gamma ((XP+PX)/2) u^-1
double effective_hamiltonian_residual(const DampedOscillatorParams& p,
                                      std::size_t n);

// |mu| of the descriptor's adag^2 exponent
double squeeze_magnitude(const SqueezedVacuumDescriptor& d);

}  // namespace fresnel
