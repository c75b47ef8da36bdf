#include <doctest.h>

#include <cmath>
#include <complex>

#include "fresnel/errors.hpp"
#include "fresnel/fresnel_operator.hpp"
#include "fresnel/quantum_abcd.hpp"
#include "fresnel/verify.hpp"

using namespace fresnel;

TEST_CASE("identity matrix gives the identity operator") {
  const CMatrix f = fresnel_normal_order(RayMatrix::identity(), 32);
  CHECK((f - CMatrix::identity(32)).frobenius_norm() < 1e-12);
  const CMatrix fc = fresnel_canonical(RayMatrix::identity(), 32);
  CHECK((fc - CMatrix::identity(32)).frobenius_norm() < 1e-11);
}

TEST_CASE("normally ordered exponents") {
  const GaussianExponents ge = fresnel_exponents(make_matrix(2.0, 1.0, 1.0, 1.0));
  // t = 3, f = (1 + 2i)/6, 1+g = 2/3, h = -(1 - 2i)/6
  CHECK(std::abs(ge.prefactor - std::sqrt(cplx{2.0 / 3.0, 0.0})) < 1e-15);
  CHECK(std::abs(ge.f - cplx{1.0 / 6.0, 1.0 / 3.0}) < 1e-15);
  CHECK(std::abs(ge.g - cplx{-1.0 / 3.0, 0.0}) < 1e-15);
  CHECK(std::abs(ge.h - cplx{-1.0 / 6.0, 1.0 / 3.0}) < 1e-15);
  // |s|^2 - |r|^2 = 1 translates to |2f| < 1
  CHECK(std::abs(2.0 * ge.f) < 1.0);
}

// Frozen oracle: 60-digit evaluation of the normally ordered closed
// form (exp(f adag^2) (1+g)^N exp(h a^2) column sums in exact arithmetic).
TEST_CASE("normal-order operator matches the exact closed form") {
  const std::size_t n = 128;
  SUBCASE("matrix (2,1;1,1)") {
    const CMatrix f = fresnel_normal_order(make_matrix(2.0, 1.0, 1.0, 1.0), n);
    auto probe = [&](std::size_t i, std::size_t j, double re, double im) {
      CHECK(std::abs(f(i, j) - cplx{re, im}) < 2e-8);
    };
    probe(0, 0, 0.81649658092772603273, 0.0);
    probe(2, 0, 0.19245008972987525484, 0.38490017945975050967);
    probe(5, 3, 0.011270011471299714269, 0.022540022942599428537);
    probe(20, 20, -0.1226921405937248842, 0.0);
    probe(31, 31, 0.11303615140031666457, 0.0);
    probe(10, 4, -0.064457675831120355464, -0.01171957742384006463);
  }
  SUBCASE("gamma-lens (1,0;-0.4,1) vacuum column") {
    const CMatrix f = fresnel_normal_order(lens_param(-0.4), n);
    auto probe = [&](std::size_t i, double re, double im) {
      CHECK(std::abs(f(i, 0) - cplx{re, im}) < 1e-10);
    };
    probe(0, 0.98542354782838980316, -0.0975761603888435015);
    probe(2, -0.040068596018301838793, -0.13134621539841175502);
    probe(4, -0.020540206695538907336, 0.011048125748272862191);
    probe(8, 0.00048314739590444720399, -0.0005944003059278341921);
    // odd amplitudes vanish identically (adag^2 parity)
    for (std::size_t i = 1; i < n; i += 2) CHECK(std::abs(f(i, 0)) == 0.0);
  }
}

TEST_CASE("squeeze operator") {
  const std::size_t n = 64;
  const double sg = 0.5;
  SUBCASE("vacuum element is sech^{1/2}") {
    const CMatrix s = squeeze_operator(std::exp(sg), n);
    CHECK(std::abs(s(0, 0)) ==
          doctest::Approx(std::pow(std::cosh(sg), -0.5)).epsilon(1e-10));
    // normal form gives c2/c0 = sqrt(2) tanh(sg)/2
    CHECK(std::abs(s(2, 0) / s(0, 0) -
                   cplx{std::sqrt(2.0) * std::tanh(sg) / 2.0, 0.0}) < 1e-10);
  }
  SUBCASE("identity at A=1 and domain error at A<=0") {
    CHECK((squeeze_operator(1.0, 16) - CMatrix::identity(16)).frobenius_norm() <
          1e-12);
    CHECK_THROWS_AS(squeeze_operator(-1.0, 16), DomainError);
  }
  SUBCASE("collapse onto the normal-order route") {
    const CMatrix s = squeeze_operator(std::exp(sg), n);
    const CMatrix f = fresnel_normal_order(magnifier(std::exp(sg)), n);
    CHECK((f - s).interior_frobenius(interior_dim(n)) < 1e-10);
  }
}

TEST_CASE("quadratic phase and free propagator") {
  const std::size_t n = 64;
  CHECK((quadratic_phase(0.0, n) - CMatrix::identity(n)).frobenius_norm() <
        1e-12);
  const CMatrix q = quadratic_phase(0.8, n);
  CHECK(unitarity_residual(q, n) < 1e-10);

  const CMatrix qb = quadratic_phase(-0.8, n);
  CHECK((q * qb - CMatrix::identity(n)).frobenius_norm() < 1e-10);

  // lens and free-space collapses, up to the metaplectic sign
  const CMatrix fn = fresnel_normal_order(lens_param(0.8), n);
  const cplx ph = relative_phase(fn, q, interior_dim(n));
  CHECK((fn - q * ph).interior_frobenius(interior_dim(n)) < 1e-9);
  CHECK(std::abs(ph * ph - cplx{1.0, 0.0}) < 1e-9);

  const CMatrix fp = free_propagator(1.0, n);
  const CMatrix fn2 = fresnel_normal_order(free_space(1.0), n);
  const cplx ph2 = relative_phase(fn2, fp, interior_dim(n));
  CHECK((fn2 - fp * ph2).interior_frobenius(interior_dim(n)) < 1e-9);
}

TEST_CASE("canonical route") {
  const std::size_t n = 128;
  SUBCASE("A <= 0 rejected") {
    CHECK_THROWS_AS(fresnel_canonical(make_matrix(0.0, 1.0, -1.0, 0.0), n),
                    DomainError);
  }
  SUBCASE("free space reduces to exp(-i P^2 / 2)") {
    const CMatrix fc = fresnel_canonical(free_space(1.0), n);
    const CMatrix fp = free_propagator(1.0, n);
    CHECK((fc - fp).interior_frobenius(interior_dim(n)) < 1e-10);
  }
  SUBCASE("agreement with the normal-order route for (2,1;1,1)") {
    const RayMatrix m = make_matrix(2.0, 1.0, 1.0, 1.0);
    const CMatrix fc = fresnel_canonical(m, n);
    const CMatrix fn = fresnel_normal_order(m, n);
    const cplx ph = relative_phase(fn, fc, interior_dim(n));
    CHECK((fn - fc * ph).interior_frobenius(interior_dim(n)) < 1e-6);
    CHECK(std::abs(ph * ph - cplx{1.0, 0.0}) < 1e-6);
  }
}

TEST_CASE("analytic kernel") {
  const RayMatrix free1 = free_space(1.7);
  const cplx k = kernel_analytic(free1, 0.4, -0.3);
  const cplx expect = 1.0 / std::sqrt(cplx{0.0, 2.0 * M_PI * 1.7}) *
                      std::exp(cplx{0.0, 0.49 / (2.0 * 1.7)});
  CHECK(std::abs(k - expect) < 1e-15);

  // modulus independent of the arguments
  CHECK(std::abs(std::abs(kernel_analytic(free1, 1.2, 0.9)) -
                 1.0 / std::sqrt(2.0 * M_PI * 1.7)) < 1e-15);

  // A <-> D swap mirrors the arguments
  const RayMatrix m = make_matrix(2.0, 1.0, 1.0, 1.0);
  const RayMatrix swapped = make_matrix(1.0, 1.0, 1.0, 2.0);
  CHECK(std::abs(kernel_analytic(m, 0.7, -1.1) -
                 kernel_analytic(swapped, -1.1, 0.7)) < 1e-15);

  CHECK_THROWS_AS(kernel_analytic(lens_param(1.0), 0.0, 0.0), PoleError);
}

TEST_CASE("kernel reconstruction from the Fock operator") {
  SUBCASE("identity operator gives a symmetric truncated delta") {
    const CMatrix ident = CMatrix::identity(128);
    const cplx k1 = kernel_from_fock(ident, 0.4, -0.2, 128);
    const cplx k2 = kernel_from_fock(ident, -0.2, 0.4, 128);
    CHECK(std::abs(k1 - k2) < 1e-12);
    CHECK(kernel_from_fock(ident, 0.0, 0.0, 128).real() > 1.0);
  }
  SUBCASE("free-space reconstruction matches the closed form") {
    const std::size_t n = 256;
    const RayMatrix m = free_space(1.0);
    const CMatrix f = fresnel_normal_order(m, n);
    const KernelComparison cmp = compare_kernels(m, f, -2.0, 2.0, 41);
    CHECK(cmp.max_abs_deviation < 1e-4);
    CHECK(std::abs(cmp.phase * cmp.phase - cplx{1.0, 0.0}) < 1e-4);
  }
  SUBCASE("nmax beyond the operator dimension is rejected") {
    CHECK_THROWS_AS(kernel_from_fock(CMatrix::identity(16), 0.0, 0.0, 32),
                    DomainError);
  }
}

TEST_CASE("numeric Fresnel transform") {
  SUBCASE("d -> 0 approaches the input field") {
    const double d = 1e-3;
    const double lo = -4.0, hi = 4.0;
    const std::size_t samples = 32001;
    const double dx = (hi - lo) / (samples - 1);
    std::vector<cplx> field(samples);
    for (std::size_t i = 0; i < samples; ++i) {
      const double x = lo + dx * i;
      field[i] = cplx{std::exp(-0.5 * x * x), 0.0};
    }
    const auto out = fresnel_transform_numeric(free_space(d), field, lo, dx);
    double worst = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
      const double x = lo + dx * i;
      if (std::abs(x) > 2.0) continue;
      worst = std::max(worst, std::abs(out[i] - field[i]));
    }
    CHECK(worst < 1e-2);
  }
  SUBCASE("undersampled chirp raises a diagnostic") {
    std::vector<cplx> field(101, cplx{1.0, 0.0});
    CHECK_THROWS_AS(
        fresnel_transform_numeric(free_space(1e-3), field, -4.0, 0.08),
        NumericError);
  }
}

TEST_CASE("multiplication check") {
  const std::size_t n = 128;
  SUBCASE("identity pair") {
    const MultiplicationCheck chk =
        multiplication_check(RayMatrix::identity(), RayMatrix::identity(), n);
    CHECK(chk.residual < 1e-12);
    CHECK(std::abs(chk.phase - cplx{1.0, 0.0}) < 1e-12);
  }
  SUBCASE("commuting free-space pair") {
    const MultiplicationCheck chk =
        multiplication_check(free_space(0.8), free_space(1.3), n);
    CHECK(chk.residual < 1e-8);
    CHECK(std::abs(chk.phase - cplx{1.0, 0.0}) < 1e-8);
  }
  SUBCASE("random trust-region pair") {
    Rng rng(23);
    for (int i = 0; i < 5; ++i) {
      RayMatrix m1 = random_unimodular(rng, 2.0, kSqueezeTrustRadius);
      RayMatrix m2 = random_unimodular(rng, 2.0, kSqueezeTrustRadius);
      while (squeeze_content(compose(m2, m1)) > kSqueezeTrustRadius) {
        m1 = random_unimodular(rng, 2.0, kSqueezeTrustRadius);
        m2 = random_unimodular(rng, 2.0, kSqueezeTrustRadius);
      }
      const MultiplicationCheck chk = multiplication_check(m2, m1, n);
      CHECK(chk.residual < 1e-6);
      CHECK(std::abs(chk.phase * chk.phase - cplx{1.0, 0.0}) < 1e-6);
    }
  }
}

TEST_CASE("A <= 0 matrices on the normal-order route") {
  const std::size_t n = 128;
  const RayMatrix fourier = make_matrix(0.0, 1.0, -1.0, 0.0);

  SUBCASE("Fourier rotation is unitary and diagonal-phase-like") {
    const CMatrix f = fresnel_normal_order(fourier, n);
    CHECK(unitarity_residual(f, interior_dim(n)) < 1e-10);
    // rotation by -pi/2: |F[n][n]| = 1, off-diagonal zero
    for (std::size_t i = 0; i < 16; ++i) {
      CHECK(std::abs(std::abs(f(i, i)) - 1.0) < 1e-10);
      for (std::size_t j = 0; j < 16; ++j)
        if (i != j) CHECK(std::abs(f(i, j)) < 1e-10);
    }
    CHECK(std::abs(f(0, 0) - std::exp(cplx{0.0, -M_PI / 4.0})) < 1e-10);
  }
  SUBCASE("squared Fourier reaches the point reflection (A = D = -1)") {
    const MultiplicationCheck chk = multiplication_check(fourier, fourier, n);
    CHECK(chk.residual < 1e-8);
    CHECK(std::abs(chk.phase * chk.phase - cplx{1.0, 0.0}) < 1e-8);
  }
  SUBCASE("Fourier kernel e^{-i x2 x1} is reconstructed") {
    const std::size_t nk = 256;
    const CMatrix f = fresnel_normal_order(fourier, nk);
    const KernelComparison cmp = compare_kernels(fourier, f, -2.0, 2.0, 41);
    CHECK(cmp.max_abs_deviation < 1e-3);
  }
  SUBCASE("negative-A squeeze") {
    const RayMatrix m = make_matrix(-1.5, 0.4, 0.5, -0.8);
    const CMatrix f = fresnel_normal_order(m, n);
    CHECK(unitarity_residual(f, interior_dim(n)) < 1e-7);
    const FockState out = vacuum_output(m, n);
    CHECK(std::abs(out.norm() - 1.0) < 1e-8);
  }
}

TEST_CASE("unitarity of built operators") {
  Rng rng(31);
  const std::size_t n = 128;
  for (int i = 0; i < 5; ++i) {
    const RayMatrix m = random_unimodular(rng, 3.0);
    const CMatrix f = fresnel_normal_order(m, n);
    CHECK(unitarity_residual(f, interior_dim(n)) < 1e-7);
  }
}
