#pragma once

#include <complex>

namespace fresnel {

using cplx = std::complex<double>;

// Real 2x2 ray-transfer matrix (A,B;C,D) with det = 1.
// Lengths are dimensionless (fixed unit), hbar = 1 throughout.
class RayMatrix {
 public:
  // Throws NumericError if |AD - BC - 1| > 1e-12.
  RayMatrix(double a, double b, double c, double d);

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double d() const { return d_; }
  double det() const { return a_ * d_ - b_ * c_; }

  static RayMatrix identity() { return RayMatrix(1.0, 0.0, 0.0, 1.0); }

 private:
  double a_, b_, c_, d_;
};

struct Ray {
  double height;     // r, distance from the optical axis
  double direction;  // alpha, optical direction-cosine
};

// Complex pair (s, r) with |s|^2 - |r|^2 = 1.
struct SRPair {
  cplx s;
  cplx r;
};

// Complex beam parameter; Im q > 0 whenever produced from a RayMatrix.
struct QParam {
  cplx q;
};

// element constructors
RayMatrix free_space(double d);            // (1, d; 0, 1)
RayMatrix thin_lens(double f);             // (1, 0; -1/f, 1), f != 0
RayMatrix magnifier(double a);             // diag(a, 1/a), a != 0
RayMatrix lens_param(double c);            // (1, 0; c, 1) decomposition factor
RayMatrix make_matrix(double a, double b, double c, double d);

// m2 * m1: m1 acts first, matching F(M')F(M) = F(M'M) ordering.
// Throws NumericError if the product determinant drifts beyond 1e-9.
RayMatrix compose(const RayMatrix& m2, const RayMatrix& m1);

Ray trace_ray(const RayMatrix& m, const Ray& in);

// R2 = (A R1 + B)/(C R1 + D); PoleError if |C R1 + D| < 1e-14.
double propagate_curvature(const RayMatrix& m, double r1);

// q2 = (A q1 + B)/(C q1 + D); PoleError if |C q1 + D| < 1e-14.
QParam propagate_q(const RayMatrix& m, const QParam& q1);

// s = (A + D - i(B - C))/2, r = -(A - D + i(B + C))/2
SRPair abcd_to_sr(const RayMatrix& m);

// inverse map; throws NumericError if | |s|^2 - |r|^2 - 1 | > 1e-10
RayMatrix sr_to_abcd(const SRPair& p);

// (s, r) o (s', r'): s'' = s s' + r conj(r'), r'' = r conj(s') + r' s.
// First argument is the later-applied factor, matching compose().
SRPair sr_compose(const SRPair& p, const SRPair& p2);

struct GaussDecomposition {
  double lens_param;      // C/A
  double magnification;   // A
  double propagator_param;  // B/A
};

// (A,B;C,D) = (1,0;C/A,1) diag(A,1/A) (1,B/A;0,1); requires A > 0.
GaussDecomposition decompose(const RayMatrix& m);

// |r| of abcd_to_sr(m): hyperbolic (squeeze) content of the element.
double squeeze_content(const RayMatrix& m);

}  // namespace fresnel
