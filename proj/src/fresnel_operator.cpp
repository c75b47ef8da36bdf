#include "fresnel/fresnel_operator.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "fresnel/errors.hpp"

namespace fresnel {

namespace {

struct GeneratorEigen {
  EigenSystem x2;  // X^2
  EigenSystem p2;  // P^2
  EigenSystem g;   // (XP + PX)/2
};

const GeneratorEigen& generator_eigen(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::unique_ptr<GeneratorEigen>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    auto [x, p] = quadrature_matrices(n);
    auto ge = std::make_unique<GeneratorEigen>();
    ge->x2 = hermitian_eigen(x * x);
    ge->p2 = hermitian_eigen(p * p);
    ge->g = hermitian_eigen((x * p + p * x) * cplx{0.5, 0.0});
    it = cache.emplace(n, std::move(ge)).first;
  }
  return *it->second;
}

std::vector<cplx> phase_factors(const std::vector<double>& w, cplx scale) {
  std::vector<cplx> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = std::exp(scale * w[i]);
  return out;
}

}  // namespace

GaussianExponents fresnel_exponents(const RayMatrix& m) {
  const cplx t{m.a() + m.d(), m.b() - m.c()};
  const cplx f = cplx{m.a() - m.d(), m.b() + m.c()} / (2.0 * t);
  const cplx g = 2.0 / t - 1.0;
  const cplx h = -cplx{m.a() - m.d(), -(m.b() + m.c())} / (2.0 * t);
  return GaussianExponents{std::sqrt(2.0 / t), f, g, h};
}

CMatrix fresnel_normal_order(const RayMatrix& m, std::size_t n) {
  if (n < 2) throw DomainError("fresnel_normal_order: need dim >= 2");
  // polar split M = Q(theta) * S, S symmetric positive with det 1
  const double a = m.a(), b = m.b(), c = m.c(), d = m.d();
  const double p11 = a * a + c * c;       // M^T M
  const double p12 = a * b + c * d;
  const double p22 = b * b + d * d;
  // eigen of [[p11,p12],[p12,p22]]: angle phi, eigenvalues l1 >= l2, l1*l2=1
  const double phi = 0.5 * std::atan2(2.0 * p12, p11 - p22);
  const double mean = 0.5 * (p11 + p22);
  const double dev = std::sqrt(std::max(mean * mean - 1.0, 0.0));
  const double l1 = mean + dev, l2 = std::max(mean - dev, 1e-300);
  const double cphi = std::cos(phi), sphi = std::sin(phi);
  // S = U diag(sqrt(l1), sqrt(l2)) U^T with U = [[c,-s],[s,c]]
  const double s1 = std::sqrt(l1), s2 = std::sqrt(l2);
  const double S11 = cphi * cphi * s1 + sphi * sphi * s2;
  const double S12 = cphi * sphi * (s1 - s2);
  const double S22 = sphi * sphi * s1 + cphi * cphi * s2;
  // Q = M S^{-1}; S^{-1} = [[S22, -S12],[-S12, S11]] / det(S), det(S) = 1
  const double q11 = a * S22 - b * S12;
  const double q12 = -a * S12 + b * S11;
  const double theta = std::atan2(q12, q11);
  // K = log S = U diag(+sigma, -sigma) U^T, sigma = log(s1)
  const double sigma = std::log(s1);
  const double alpha = sigma * (cphi * cphi - sphi * sphi);
  const double beta = 2.0 * sigma * cphi * sphi;
  // K = rho * rotation(chi) of the principal squeeze generator
  const double rho = std::hypot(alpha, beta);
  const double chi = 0.5 * std::atan2(-beta, alpha);

  const auto& gen = generator_eigen(n);
  CMatrix f = eigen_apply(gen.g, phase_factors(gen.g.values, cplx{0.0, -rho}));
  // F = R(theta) R(chi) exp(-i rho G) R(chi)^dag, R(x) = diag(e^{-ix(n+1/2)})
  std::vector<cplx> left(n), right(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double half = static_cast<double>(i) + 0.5;
    left[i] = std::exp(cplx{0.0, -(theta + chi) * half});
    right[i] = std::exp(cplx{0.0, chi * half});
  }
  f.scale_rows(left);
  f.scale_cols(right);
  // pin the global phase to the principal-branch vacuum amplitude
  const cplx target = std::sqrt(2.0 / cplx{a + d, b - c});
  const cplx cur = f(0, 0);
  if (std::abs(cur) < 1e-12)
    throw NumericError("fresnel_normal_order: vacuum amplitude vanished");
  f *= target / cur;
  return f;
}

CMatrix fresnel_canonical(const RayMatrix& m, std::size_t n) {
  if (m.a() <= 0.0)
    throw DomainError(
        "fresnel_canonical: requires A > 0 (use fresnel_normal_order)");
  const auto& gen = generator_eigen(n);
  const double c_over_a = m.c() / m.a();
  const double b_over_a = m.b() / m.a();
  const double ln_a = std::log(m.a());
  CMatrix qp =
      eigen_apply(gen.x2, phase_factors(gen.x2.values, cplx{0.0, 0.5 * c_over_a}));
  CMatrix sq = eigen_apply(gen.g, phase_factors(gen.g.values, cplx{0.0, -ln_a}));
  CMatrix fp =
      eigen_apply(gen.p2, phase_factors(gen.p2.values, cplx{0.0, -0.5 * b_over_a}));
  return qp * (sq * fp);
}

FresnelBuild build_fresnel(const RayMatrix& m, std::size_t n, FresnelRoute r) {
  CMatrix op = (r == FresnelRoute::NormalOrder) ? fresnel_normal_order(m, n)
                                                : fresnel_canonical(m, n);
  return FresnelBuild{m, n, r, std::move(op)};
}

CMatrix quadratic_phase(double c, std::size_t n) {
  const auto& gen = generator_eigen(n);
  return eigen_apply(gen.x2, phase_factors(gen.x2.values, cplx{0.0, 0.5 * c}));
}

CMatrix free_propagator(double b, std::size_t n) {
  const auto& gen = generator_eigen(n);
  return eigen_apply(gen.p2, phase_factors(gen.p2.values, cplx{0.0, -0.5 * b}));
}

CMatrix squeeze_operator(double a, std::size_t n) {
  if (a <= 0.0) throw DomainError("squeeze_operator: requires A > 0");
  const auto& gen = generator_eigen(n);
  return eigen_apply(gen.g,
                     phase_factors(gen.g.values, cplx{0.0, -std::log(a)}));
}

cplx kernel_analytic(const RayMatrix& m, double x2, double x1) {
  if (std::abs(m.b()) < 1e-12)
    throw PoleError("kernel_analytic: B = 0 delta-kernel limit not supported");
  const cplx pref = 1.0 / std::sqrt(cplx{0.0, 2.0 * M_PI * m.b()});
  const double quad = m.a() * x1 * x1 - 2.0 * x2 * x1 + m.d() * x2 * x2;
  return pref * std::exp(cplx{0.0, quad / (2.0 * m.b())});
}

namespace {

std::vector<double> apodization(std::size_t nmax) {
  std::vector<double> w(nmax);
  for (std::size_t i = 0; i < nmax; ++i) {
    const double u = 2.0 * static_cast<double>(i) / static_cast<double>(nmax);
    const double u2 = u * u;
    const double u8 = u2 * u2 * u2 * u2;
    w[i] = std::exp(-u8);
  }
  return w;
}

}  // namespace

cplx kernel_from_fock(const CMatrix& op, double x2, double x1,
                      std::size_t nmax) {
  if (nmax > op.rows())
    throw DomainError("kernel_from_fock: nmax exceeds operator dimension");
  const auto w = apodization(nmax);
  std::vector<double> psi2 = hermite_functions(nmax, x2);
  std::vector<double> psi1 = hermite_functions(nmax, x1);
  std::vector<cplx> right(nmax);
  for (std::size_t i = 0; i < nmax; ++i)
    right[i] = cplx{w[i] * psi1[i], 0.0};
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < nmax; ++i) {
    cplx row{0.0, 0.0};
    const cplx* r = op.row(i);
    for (std::size_t j = 0; j < nmax; ++j) row += r[j] * right[j];
    acc += w[i] * psi2[i] * row;
  }
  return acc;
}

KernelComparison compare_kernels(const RayMatrix& m, const CMatrix& op,
                                 double lo, double hi, std::size_t npts) {
  const std::size_t nmax = op.rows();
  const auto w = apodization(nmax);
  KernelComparison out;
  out.grid.resize(npts);
  const double step = (npts > 1) ? (hi - lo) / static_cast<double>(npts - 1) : 0.0;
  CMatrix psiw(npts, nmax);
  for (std::size_t i = 0; i < npts; ++i) {
    out.grid[i] = lo + step * static_cast<double>(i);
    const auto psi = hermite_functions(nmax, out.grid[i]);
    for (std::size_t j = 0; j < nmax; ++j)
      psiw(i, j) = cplx{w[j] * psi[j], 0.0};
  }
  CMatrix kf = psiw * op * psiw.transpose();

  out.analytic.assign(npts, std::vector<cplx>(npts));
  for (std::size_t i = 0; i < npts; ++i)
    for (std::size_t j = 0; j < npts; ++j)
      out.analytic[i][j] = kernel_analytic(m, out.grid[i], out.grid[j]);

  const std::size_t mid = npts / 2;
  const cplx ratio = out.analytic[mid][mid] / kf(mid, mid);
  out.phase = ratio / std::abs(ratio);

  out.fock.assign(npts, std::vector<cplx>(npts));
  out.max_abs_deviation = 0.0;
  for (std::size_t i = 0; i < npts; ++i)
    for (std::size_t j = 0; j < npts; ++j) {
      const cplx aligned = out.phase * kf(i, j);
      out.fock[i][j] = aligned;
      out.max_abs_deviation = std::max(out.max_abs_deviation,
                                       std::abs(aligned - out.analytic[i][j]));
    }
  return out;
}

std::vector<cplx> fresnel_transform_numeric(const RayMatrix& m,
                                            const std::vector<cplx>& field,
                                            double xmin, double dx) {
  if (std::abs(m.b()) < 1e-12)
    throw PoleError("fresnel_transform_numeric: B = 0");
  if (field.size() < 2 || dx <= 0.0)
    throw DomainError("fresnel_transform_numeric: need a uniform grid");
  const std::size_t n = field.size();
  const double xmax = xmin + dx * static_cast<double>(n - 1);
  // chirp phase (A x1^2 - 2 x2 x1)/(2B): slope (A x1 - x2)/B
  const double reach = std::max(std::abs(xmin), std::abs(xmax));
  const double max_slope =
      (std::abs(m.a()) * reach + reach) / std::abs(m.b());
  if (dx * max_slope >= M_PI) {
    const std::size_t needed = static_cast<std::size_t>(
        std::ceil((xmax - xmin) * max_slope / M_PI)) + 1;
    throw NumericError(
        "fresnel_transform_numeric: chirp undersampled; need >= " +
        std::to_string(needed) + " samples on this window");
  }
  std::vector<cplx> out(n, cplx{0.0, 0.0});
  const cplx pref = 1.0 / std::sqrt(cplx{0.0, 2.0 * M_PI * m.b()});
  const double inv2b = 1.0 / (2.0 * m.b());
  // phase (A x1^2 - 2 x2 x1 + D x2^2)/(2B) is quadratic in the sample index:
  // generate the chirp with two running rotators instead of exp() per point
  const cplx curv = std::exp(cplx{0.0, m.a() * dx * dx * 2.0 * inv2b});
  for (std::size_t i = 0; i < n; ++i) {
    const double x2 = xmin + dx * static_cast<double>(i);
    const double phi0 =
        (m.a() * xmin * xmin - 2.0 * x2 * xmin + m.d() * x2 * x2) * inv2b;
    const double x1b = xmin + dx;
    const double phi1 =
        (m.a() * x1b * x1b - 2.0 * x2 * x1b + m.d() * x2 * x2) * inv2b;
    cplx z = std::exp(cplx{0.0, phi0});
    cplx step = std::exp(cplx{0.0, phi1 - phi0});
    cplx acc = 0.5 * z * field[0];
    for (std::size_t j = 1; j < n; ++j) {
      z *= step;
      step *= curv;
      acc += (j + 1 == n) ? 0.5 * z * field[j] : z * field[j];
    }
    out[i] = acc * pref * dx;
  }
  return out;
}

MultiplicationCheck multiplication_check(const RayMatrix& m2,
                                         const RayMatrix& m1, std::size_t n) {
  const CMatrix f2 = fresnel_normal_order(m2, n);
  const CMatrix f1 = fresnel_normal_order(m1, n);
  const CMatrix f12 = fresnel_normal_order(compose(m2, m1), n);
  const CMatrix prod = f2 * f1;
  // <0| F12^dag F2 F1 |0> = sum_k conj(F12[k][0]) prod[k][0]
  cplx phase{0.0, 0.0};
  for (std::size_t k = 0; k < n; ++k)
    phase += std::conj(f12(k, 0)) * prod(k, 0);
  const double mag = std::abs(phase);
  phase = (mag > 0.0) ? phase / mag : cplx{1.0, 0.0};
  CMatrix diff = prod - f12 * phase;
  return MultiplicationCheck{diff.interior_frobenius(interior_dim(n)), phase};
}

double unitarity_residual(const CMatrix& op, std::size_t k) {
  CMatrix gram = op.adjoint() * op;
  for (std::size_t i = 0; i < gram.rows(); ++i) gram(i, i) -= cplx{1.0, 0.0};
  return gram.interior_frobenius(k);
}

cplx relative_phase(const CMatrix& ref, const CMatrix& other, std::size_t k) {
  std::size_t bi = 0, bj = 0;
  if (std::abs(ref(0, 0)) < 1e-12) {
    double best = 0.0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (std::abs(ref(i, j)) > best) {
          best = std::abs(ref(i, j));
          bi = i;
          bj = j;
        }
  }
  const cplx ratio = ref(bi, bj) / other(bi, bj);
  return ratio / std::abs(ratio);
}

}  // namespace fresnel
