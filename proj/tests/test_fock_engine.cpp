#include <doctest.h>

#include <cmath>
#include <complex>
#include <sstream>

#include "fresnel/errors.hpp"
#include "fresnel/fock_engine.hpp"
#include "fresnel/verify.hpp"

using namespace fresnel;

TEST_CASE("ladder matrices") {
  const auto [a, adag] = ladder_matrices(2);
  CHECK(a(0, 1) == cplx{1.0, 0.0});
  CHECK(a(0, 0) == cplx{0.0, 0.0});
  CHECK(a(1, 0) == cplx{0.0, 0.0});
  CHECK(a(1, 1) == cplx{0.0, 0.0});

  const std::size_t n = 24;
  const auto [al, ad] = ladder_matrices(n);
  CMatrix comm = al * ad - ad * al;
  for (std::size_t i = 0; i + 1 < n; ++i)
    CHECK(std::abs(comm(i, i) - cplx{1.0, 0.0}) < 1e-14);
  CHECK(std::abs(comm(n - 1, n - 1) - cplx{-(double)(n - 1), 0.0}) < 1e-12);

  CMatrix num = ad * al;
  for (std::size_t i = 0; i < n; ++i)
    CHECK(std::abs(num(i, i) - cplx{(double)i, 0.0}) < 1e-13);
  CHECK_THROWS_AS(ladder_matrices(1), DomainError);
}

TEST_CASE("quadrature matrices") {
  const std::size_t n = 24;
  const auto [x, p] = quadrature_matrices(n);
  CHECK(std::abs(x(0, 1) - cplx{1.0 / std::sqrt(2.0), 0.0}) < 1e-15);
  CHECK(x.hermiticity_defect() < 1e-15);
  CHECK(p.hermiticity_defect() < 1e-15);

  CMatrix energy = x * x + p * p;
  for (std::size_t i = 0; i + 1 < n; ++i)
    CHECK(std::abs(energy(i, i) - cplx{2.0 * i + 1.0, 0.0}) < 1e-12);

  CMatrix comm = x * p - p * x;
  for (std::size_t i = 0; i + 1 < n; ++i)
    CHECK(std::abs(comm(i, i) - cplx{0.0, 1.0}) < 1e-13);
}

TEST_CASE("normal ordered gaussian builder") {
  SUBCASE("unit exponents give the identity") {
    const CMatrix e = normal_ordered_gaussian(
        GaussianExponents{cplx{1.0, 0.0}, {}, {}, {}}, 16);
    CHECK((e - CMatrix::identity(16)).frobenius_norm() < 1e-14);
  }
  SUBCASE(": exp(lambda adag a) : = (1+lambda)^N") {
    const cplx lam{0.35, -0.2};
    const CMatrix e = normal_ordered_gaussian(
        GaussianExponents{cplx{1.0, 0.0}, {}, lam, {}}, 12);
    cplx expect{1.0, 0.0};
    for (std::size_t i = 0; i < 12; ++i) {
      CHECK(std::abs(e(i, i) - expect) < 1e-12 * std::abs(expect));
      expect *= (cplx{1.0, 0.0} + lam);
    }
  }
  SUBCASE("singular exponent rejected") {
    CHECK_THROWS_AS(normal_ordered_gaussian(
                        GaussianExponents{cplx{1.0, 0.0}, {}, cplx{-1.0, 0.0}, {}}, 8),
                    DomainError);
  }
  SUBCASE("series terminates within ceil(N/2) shifts") {
    const std::size_t n = 17;
    const CMatrix e = normal_ordered_gaussian(
        GaussianExponents{cplx{1.0, 0.0}, cplx{0.4, 0.1}, {}, {}}, n);
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (std::abs(e(i, 0)) > 0.0) ++nonzero;
    CHECK(nonzero <= (n + 1) / 2);
    // pure adag^2 exponential is lower triangular with unit diagonal
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) CHECK(e(i, j) == cplx{0.0, 0.0});
  }
}

TEST_CASE("exp_hermitian") {
  const std::size_t n = 32;
  const auto [x, p] = quadrature_matrices(n);
  const auto [a, adag] = ladder_matrices(n);

  SUBCASE("zero scale is the identity") {
    const CMatrix e = exp_hermitian(x * x, cplx{0.0, 0.0});
    CHECK((e - CMatrix::identity(n)).frobenius_norm() < 1e-11);
  }
  SUBCASE("parity operator on the number basis") {
    const CMatrix num = adag * a;
    const CMatrix e = exp_hermitian(num, cplx{0.0, M_PI});
    for (std::size_t i = 0; i < n; ++i) {
      const double expect = (i % 2 == 0) ? 1.0 : -1.0;
      CHECK(std::abs(e(i, i) - cplx{expect, 0.0}) < 1e-12);
    }
  }
  SUBCASE("inverse pair and unitarity") {
    const CMatrix u = exp_hermitian(x * x, cplx{0.0, 0.37});
    const CMatrix ui = exp_hermitian(x * x, cplx{0.0, -0.37});
    CHECK((u * ui - CMatrix::identity(n)).frobenius_norm() < 1e-10);
    CHECK((u.adjoint() * u - CMatrix::identity(n)).frobenius_norm() < 1e-9);
  }
  SUBCASE("non-Hermitian input rejected") {
    CHECK_THROWS_AS(exp_hermitian(a, cplx{1.0, 0.0}), DomainError);
  }
}

TEST_CASE("hermitian_eigen reconstructs random Hermitian matrices") {
  Rng rng(41);
  const std::size_t n = 40;
  CMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = cplx{rng.uniform(-2.0, 2.0), 0.0};
    for (std::size_t j = i + 1; j < n; ++j) {
      h(i, j) = cplx{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
      h(j, i) = std::conj(h(i, j));
    }
  }
  const EigenSystem es = hermitian_eigen(h);
  CHECK((es.vectors.adjoint() * es.vectors - CMatrix::identity(n))
            .frobenius_norm() < 1e-12);
  std::vector<cplx> vals(n);
  for (std::size_t i = 0; i < n; ++i) vals[i] = cplx{es.values[i], 0.0};
  CHECK((eigen_apply(es, vals) - h).frobenius_norm() < 1e-11);
  for (std::size_t i = 0; i + 1 < n; ++i) CHECK(es.values[i] <= es.values[i + 1]);
}

TEST_CASE("exp_general") {
  const std::size_t n = 24;
  SUBCASE("exp of zero") {
    const CMatrix e = exp_general(CMatrix(n, n));
    CHECK((e - CMatrix::identity(n)).frobenius_norm() < 1e-14);
  }
  SUBCASE("matches the terminating series for f adag^2") {
    const cplx f{0.31, -0.12};
    const auto [a, adag] = ladder_matrices(n);
    const CMatrix gen = adag * adag * f;
    const CMatrix via_pade = exp_general(gen);
    const CMatrix via_series = normal_ordered_gaussian(
        GaussianExponents{cplx{1.0, 0.0}, f, {}, {}}, n);
    CHECK((via_pade - via_series).max_abs() < 1e-10);
  }
  SUBCASE("exp(A) exp(-A) = I for random bounded A") {
    Rng rng(7);
    CMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        g(i, j) = cplx{rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)};
    const CMatrix e = exp_general(g);
    CMatrix gm = g;
    gm *= cplx{-1.0, 0.0};
    const CMatrix em = exp_general(gm);
    CHECK((e * em - CMatrix::identity(n)).frobenius_norm() < 1e-10);
  }
}

TEST_CASE("hermite functions") {
  CHECK(hermite_function(0, 0.0) ==
        doctest::Approx(std::pow(M_PI, -0.25)).epsilon(1e-14));
  CHECK(std::abs(hermite_function(1, 0.0)) < 1e-300);

  // quadrature normalization oracle
  for (std::size_t n : {0u, 7u, 33u, 64u}) {
    const double lo = -14.0, hi = 14.0;
    const std::size_t samples = 8001;
    const double dx = (hi - lo) / (samples - 1);
    double acc = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
      const double x = lo + dx * i;
      const double v = hermite_function(n, x);
      acc += ((i == 0 || i + 1 == samples) ? 0.5 : 1.0) * v * v;
    }
    CHECK(acc * dx == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("coherent states") {
  const FockState zero = coherent_state(cplx{0.0, 0.0}, 16);
  CHECK(std::abs(zero.amplitudes[0] - cplx{1.0, 0.0}) < 1e-15);
  CHECK(zero.norm() == doctest::Approx(1.0));

  bool warned = false;
  const FockState z1 = coherent_state(cplx{0.6, 0.8}, 64, &warned);
  CHECK_FALSE(warned);
  CHECK(z1.norm() == doctest::Approx(1.0).epsilon(1e-12));

  // a|z> = z|z> on the interior
  const auto [a, adag] = ladder_matrices(64);
  const auto applied = a.apply(z1.amplitudes);
  for (std::size_t i = 0; i < 16; ++i)
    CHECK(std::abs(applied[i] - cplx{0.6, 0.8} * z1.amplitudes[i]) < 1e-10);

  coherent_state(cplx{5.0, 0.0}, 64, &warned);
  CHECK(warned);  // |z|^2 = 25 > 16
}

TEST_CASE("operator and state dumps round-trip bit exactly") {
  Rng rng(13);
  CMatrix op(6, 6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      op(i, j) = cplx{rng.uniform(-1.0, 1.0) / 3.0, rng.uniform(-1.0, 1.0) / 7.0};
  std::stringstream ss;
  dump_operator(ss, op);
  const CMatrix back = load_operator(ss);
  REQUIRE(back.rows() == 6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      CHECK(back(i, j).real() == op(i, j).real());
      CHECK(back(i, j).imag() == op(i, j).imag());
    }

  FockState st;
  st.dim = 9;
  for (std::size_t i = 0; i < 9; ++i)
    st.amplitudes.push_back(cplx{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
  std::stringstream s2;
  dump_state(s2, st);
  const FockState sback = load_state(s2);
  REQUIRE(sback.dim == 9);
  for (std::size_t i = 0; i < 9; ++i) {
    CHECK(sback.amplitudes[i].real() == st.amplitudes[i].real());
    CHECK(sback.amplitudes[i].imag() == st.amplitudes[i].imag());
  }

  std::stringstream bad("fock-op N=x\n");
  CHECK_THROWS_AS(load_operator(bad), ParseError);
}
