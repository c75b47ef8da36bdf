#include "fresnel/matrix_optics.hpp"

#include <cmath>
#include <string>

#include "fresnel/errors.hpp"

namespace fresnel {

RayMatrix::RayMatrix(double a, double b, double c, double d)
    : a_(a), b_(b), c_(c), d_(d) {
  if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c) &&
        std::isfinite(d)))
    throw NumericError("RayMatrix: non-finite entry");
  const double det = a * d - b * c;
  if (std::abs(det - 1.0) > 1e-12)
    throw NumericError("RayMatrix: determinant " + std::to_string(det) +
                       " deviates from 1 beyond 1e-12");
}

RayMatrix free_space(double d) { return RayMatrix(1.0, d, 0.0, 1.0); }

RayMatrix thin_lens(double f) {
  if (f == 0.0) throw DomainError("thin_lens: focal length must be nonzero");
  return RayMatrix(1.0, 0.0, -1.0 / f, 1.0);
}

RayMatrix magnifier(double a) {
  if (a == 0.0) throw DomainError("magnifier: magnification must be nonzero");
  return RayMatrix(a, 0.0, 0.0, 1.0 / a);
}

RayMatrix lens_param(double c) { return RayMatrix(1.0, 0.0, c, 1.0); }

RayMatrix make_matrix(double a, double b, double c, double d) {
  return RayMatrix(a, b, c, d);
}

RayMatrix compose(const RayMatrix& m2, const RayMatrix& m1) {
  const double a = m2.a() * m1.a() + m2.b() * m1.c();
  const double b = m2.a() * m1.b() + m2.b() * m1.d();
  const double c = m2.c() * m1.a() + m2.d() * m1.c();
  const double d = m2.c() * m1.b() + m2.d() * m1.d();
  const double det = a * d - b * c;
  if (std::abs(det - 1.0) > 1e-9)
    throw NumericError("compose: determinant drift " + std::to_string(det - 1.0));
  // renormalize the residual drift so chained compositions stay unimodular
  const double scale = 1.0 / std::sqrt(det);
  return RayMatrix(a * scale, b * scale, c * scale, d * scale);
}

Ray trace_ray(const RayMatrix& m, const Ray& in) {
  return Ray{m.a() * in.height + m.b() * in.direction,
             m.c() * in.height + m.d() * in.direction};
}

double propagate_curvature(const RayMatrix& m, double r1) {
  const double den = m.c() * r1 + m.d();
  if (std::abs(den) < 1e-14)
    throw PoleError("propagate_curvature: wavefront focuses to a point");
  return (m.a() * r1 + m.b()) / den;
}

QParam propagate_q(const RayMatrix& m, const QParam& q1) {
  const cplx den = m.c() * q1.q + m.d();
  if (std::abs(den) < 1e-14) throw PoleError("propagate_q: pole in Mobius map");
  return QParam{(m.a() * q1.q + m.b()) / den};
}

SRPair abcd_to_sr(const RayMatrix& m) {
  return SRPair{
      0.5 * cplx{m.a() + m.d(), -(m.b() - m.c())},
      -0.5 * cplx{m.a() - m.d(), m.b() + m.c()},
  };
}

RayMatrix sr_to_abcd(const SRPair& p) {
  const double uni = std::norm(p.s) - std::norm(p.r);
  if (std::abs(uni - 1.0) > 1e-10)
    throw NumericError("sr_to_abcd: pair not unimodular, |s|^2-|r|^2 = " +
                       std::to_string(uni));
  const double a = p.s.real() - p.r.real();
  const double d = p.s.real() + p.r.real();
  const double b = -(p.s.imag() + p.r.imag());
  const double c = p.s.imag() - p.r.imag();
  return RayMatrix(a, b, c, d);
}

SRPair sr_compose(const SRPair& p, const SRPair& p2) {
  return SRPair{p.s * p2.s + p.r * std::conj(p2.r),
                p.r * std::conj(p2.s) + p2.r * p.s};
}

GaussDecomposition decompose(const RayMatrix& m) {
  if (m.a() <= 0.0)
    throw DomainError(
        "decompose: requires A > 0; use the normal-order route instead");
  return GaussDecomposition{m.c() / m.a(), m.a(), m.b() / m.a()};
}

double squeeze_content(const RayMatrix& m) {
  return std::abs(abcd_to_sr(m).r);
}

}  // namespace fresnel
