#include "fresnel/quantum_abcd.hpp"

#include <cmath>

#include "fresnel/errors.hpp"
#include "fresnel/fresnel_operator.hpp"

namespace fresnel {

QParam q_parameter(const RayMatrix& m) {
  const cplx cd{m.c(), m.d()};
  // |C + iD| = 0 would need C = D = 0, impossible for det = 1
  return QParam{-cplx{m.a(), m.b()} / cd};
}

SqueezedVacuumDescriptor descriptor_from_matrix(const RayMatrix& m,
                                                std::size_t n) {
  const QParam q = q_parameter(m);
  const cplx cd{m.c(), m.d()};
  const cplx pref = std::sqrt(-2.0 / cd / (q.q + cplx{0.0, 1.0}));
  return SqueezedVacuumDescriptor{q, pref, n};
}

FockState squeezed_vacuum_from_q(const SqueezedVacuumDescriptor& d) {
  if (d.q.q.imag() <= 0.0)
    throw DomainError("squeezed_vacuum_from_q: Im q <= 0, not normalizable");
  const cplx mu =
      (d.q.q - cplx{0.0, 1.0}) / (2.0 * (d.q.q + cplx{0.0, 1.0}));
  FockState st;
  st.dim = d.dim;
  st.amplitudes.assign(d.dim, cplx{0.0, 0.0});
  cplx term = d.prefactor;
  for (std::size_t k = 0; 2 * k < d.dim; ++k) {
    st.amplitudes[2 * k] = term;
    const double m1 = static_cast<double>(2 * k + 1);
    const double m2 = static_cast<double>(2 * k + 2);
    term *= mu * std::sqrt(m1 * m2) / static_cast<double>(k + 1);
  }
  return st;
}

FockState vacuum_output(const RayMatrix& m, std::size_t n) {
  const CMatrix f = fresnel_normal_order(m, n);
  FockState st;
  st.dim = n;
  st.amplitudes.resize(n);
  for (std::size_t i = 0; i < n; ++i) st.amplitudes[i] = f(i, 0);
  return st;
}

SqueezedVacuumDescriptor abcd_law_apply(const RayMatrix& m2,
                                        const SqueezedVacuumDescriptor& in) {
  if (in.q.q.imag() <= 0.0)
    throw DomainError("abcd_law_apply: input q not in the upper half-plane");
  const cplx q1 = in.q.q;
  const cplx i_unit{0.0, 1.0};
  const cplx den = m2.d() - m2.c() * q1;  // = -(C' q1 - D')
  if (std::abs(den) < 1e-14)
    throw PoleError("abcd_law_apply: C' q1 - D' vanished");
  // recover C + iD of the producing matrix from the descriptor prefactor,
  // then apply the composed-matrix law: C'' + iD'' = (C + iD)(D' - C' q1)
  const cplx cd = -2.0 / (in.prefactor * in.prefactor * (q1 + i_unit));
  const cplx cd2 = cd * den;
  const cplx q2 = (m2.a() * q1 - m2.b()) / den;
  const cplx pref2 = std::sqrt(-2.0 / cd2 / (q2 + i_unit));
  return SqueezedVacuumDescriptor{QParam{q2}, pref2, in.dim};
}

DampedOscillatorParams::DampedOscillatorParams(double gamma_, double omega0_,
                                               double t_)
    : gamma(gamma_), omega0(omega0_), t(t_) {
  if (gamma < 0.0) throw DomainError("damped oscillator: gamma must be >= 0");
  if (omega0 <= 0.0) throw DomainError("damped oscillator: omega0 must be > 0");
  if (t < 0.0) throw DomainError("damped oscillator: t must be >= 0");
  if (omega0 <= gamma)
    throw DomainError(
        "damped oscillator: overdamped regime omega0 <= gamma not covered");
}

FockState damped_state_closed_form(const DampedOscillatorParams& p,
                                   std::size_t n) {
  const double e2 = std::exp(-2.0 * p.gamma * p.t);
  const cplx den{e2 + 1.0, p.gamma};
  const cplx pref = std::sqrt(2.0 * std::exp(-p.gamma * p.t) / den);
  const cplx mu = cplx{e2 - 1.0, -p.gamma} / (2.0 * den);
  FockState st;
  st.dim = n;
  st.amplitudes.assign(n, cplx{0.0, 0.0});
  cplx term = pref;
  for (std::size_t k = 0; 2 * k < n; ++k) {
    st.amplitudes[2 * k] = term;
    const double m1 = static_cast<double>(2 * k + 1);
    const double m2 = static_cast<double>(2 * k + 2);
    term *= mu * std::sqrt(m1 * m2) / static_cast<double>(k + 1);
  }
  return st;
}

CMatrix u_evolution(const DampedOscillatorParams& p, std::size_t n) {
  // e^{i g X^2/2} e^{-i g t (XP+PX)/2}; the right factor is the Hermitian
  // (XP+PX)/2 exponential, handled by the cached squeeze eigensystem
  return quadratic_phase(p.gamma, n) *
         squeeze_operator(std::exp(p.gamma * p.t), n);
}

CMatrix u_inverse(const DampedOscillatorParams& p, std::size_t n) {
  // e^{i g t (XP+PX)/2} e^{-i g X^2/2}
  return squeeze_operator(std::exp(-p.gamma * p.t), n) *
         quadratic_phase(-p.gamma, n);
}

HeisenbergResiduals heisenberg_transform_check(const DampedOscillatorParams& p,
                                               std::size_t n) {
  auto [x, pq] = quadrature_matrices(n);
  const CMatrix u = u_evolution(p, n);
  const CMatrix ui = u_inverse(p, n);
  const double eg = std::exp(-p.gamma * p.t);
  const double egp = std::exp(p.gamma * p.t);
  const std::size_t k = interior_dim(n);
  CMatrix dx = u * x * ui - x * cplx{eg, 0.0};
  CMatrix dp = u * pq * ui - (pq * cplx{egp, 0.0} - x * cplx{p.gamma * egp, 0.0});
  return HeisenbergResiduals{dx.interior_frobenius(k),
                             dp.interior_frobenius(k)};
}

double effective_hamiltonian_residual(const DampedOscillatorParams& p,
                                      std::size_t n) {
  auto [x, pq] = quadrature_matrices(n);
  const CMatrix x2 = x * x;
  const CMatrix p2 = pq * pq;
  const CMatrix g = (x * pq + pq * x) * cplx{0.5, 0.0};
  const CMatrix u = u_evolution(p, n);
  const CMatrix ui = u_inverse(p, n);
  const double e2 = std::exp(-2.0 * p.gamma * p.t);
  CMatrix h = p2 * cplx{0.5 * e2, 0.0} +
              x2 * cplx{0.5 * p.omega0 * p.omega0 / e2, 0.0};
  // -i u du^-1/dt = -i u (i gamma G u^-1) = gamma u G u^-1
  CMatrix heff = u * h * ui + (u * g * ui) * cplx{p.gamma, 0.0};
  CMatrix target = p2 * cplx{0.5, 0.0} + x2 * cplx{0.5 * p.omega_squared(), 0.0};
  return (heff - target).interior_frobenius(interior_dim(n));
}

double squeeze_magnitude(const SqueezedVacuumDescriptor& d) {
  return std::abs((d.q.q - cplx{0.0, 1.0}) / (2.0 * (d.q.q + cplx{0.0, 1.0})));
}

}  // namespace fresnel
