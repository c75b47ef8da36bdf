#include "fresnel/fock_engine.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "fresnel/errors.hpp"
#include "fresnel/kernels.hpp"

namespace fresnel {

cplx state_inner(const FockState& u, const FockState& v) {
  if (u.dim != v.dim) throw DomainError("state_inner: dimension mismatch");
  return vector_inner(u.amplitudes, v.amplitudes);
}

double state_fidelity(const FockState& u, const FockState& v) {
  return std::abs(state_inner(u, v)) / (u.norm() * v.norm());
}

LadderPair ladder_matrices(std::size_t n) {
  if (n < 2) throw DomainError("ladder_matrices: need dim >= 2");
  CMatrix a(n, n);
  for (std::size_t m = 1; m < n; ++m)
    a(m - 1, m) = cplx{std::sqrt(static_cast<double>(m)), 0.0};
  return LadderPair{a, a.adjoint()};
}

QuadraturePair quadrature_matrices(std::size_t n) {
  auto [a, adag] = ladder_matrices(n);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CMatrix x = (a + adag) * cplx{inv_sqrt2, 0.0};
  CMatrix p = (a - adag) * (cplx{0.0, -inv_sqrt2});  // 1/(sqrt(2) i) = -i/sqrt2
  return QuadraturePair{std::move(x), std::move(p)};
}

namespace {

// exp(f adag^2): column n carries f^k/k! sqrt((n+2k)!/n!) at row n+2k.
CMatrix exp_adag2(cplx f, std::size_t n) {
  CMatrix e(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    cplx c{1.0, 0.0};
    std::size_t k = 0;
    while (col + 2 * k < n) {
      e(col + 2 * k, col) = c;
      const double m1 = static_cast<double>(col + 2 * k + 1);
      const double m2 = static_cast<double>(col + 2 * k + 2);
      c *= f / static_cast<double>(k + 1) * std::sqrt(m1 * m2);
      ++k;
    }
  }
  return e;
}

}  // namespace

CMatrix normal_ordered_gaussian(const GaussianExponents& ge, std::size_t n) {
  const cplx one_plus_g = cplx{1.0, 0.0} + ge.g;
  if (std::abs(one_plus_g) == 0.0)
    throw DomainError("normal_ordered_gaussian: singular exponent 1+g = 0");
  CMatrix up = exp_adag2(ge.f, n);
  // exp(h a^2) = (exp(conj(h) adag^2))^dagger
  CMatrix down = exp_adag2(std::conj(ge.h), n).adjoint();
  // (1+g)^m by repeated multiplication: exponents are integers
  std::vector<cplx> diag(n);
  cplx acc{1.0, 0.0};
  for (std::size_t m = 0; m < n; ++m) {
    diag[m] = acc;
    acc *= one_plus_g;
  }
  up.scale_cols(diag);
  CMatrix out = up * down;
  out *= ge.prefactor;
  return out;
}

CMatrix exp_hermitian(const CMatrix& h, cplx scale) {
  EigenSystem es = hermitian_eigen(h, 1e-10);
  std::vector<cplx> factors(es.values.size());
  for (std::size_t i = 0; i < factors.size(); ++i)
    factors[i] = std::exp(scale * es.values[i]);
  return eigen_apply(es, factors);
}

namespace {

double one_norm(const CMatrix& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double colsum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) colsum += std::abs(a(i, j));
    best = std::max(best, colsum);
  }
  return best;
}

// solve A X = B in place by LU with partial pivoting
CMatrix lu_solve(CMatrix a, CMatrix b) {
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) throw NumericError("lu_solve: singular matrix");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      for (std::size_t j = 0; j < b.cols(); ++j) std::swap(b(k, j), b(piv, j));
    }
    const cplx inv = cplx{1.0, 0.0} / a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx l = a(i, k) * inv;
      if (l == cplx{0.0, 0.0}) continue;
      a(i, k) = l;
      kernels::active().axpy(n - k - 1, -l, a.row(k) + k + 1, a.row(i) + k + 1);
      kernels::active().axpy(b.cols(), -l, b.row(k), b.row(i));
    }
  }
  // back substitution
  for (std::size_t col = 0; col < b.cols(); ++col) {
    for (std::size_t ii = n; ii-- > 0;) {
      cplx acc = b(ii, col);
      for (std::size_t j = ii + 1; j < n; ++j) acc -= a(ii, j) * b(j, col);
      b(ii, col) = acc / a(ii, ii);
    }
  }
  return b;
}

}  // namespace

CMatrix exp_general(const CMatrix& g) {
  const std::size_t n = g.rows();
  if (g.cols() != n) throw DomainError("exp_general: matrix not square");
  const double nrm = one_norm(g);
  if (!std::isfinite(nrm) || nrm > 1e8)
    throw NumericError("exp_general: norm out of range");

  // Higham 2005 Pade-13 coefficients and theta
  static const std::array<double, 14> b13 = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};
  const double theta13 = 5.371920351148152;

  int squarings = 0;
  CMatrix a = g;
  if (nrm > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
    a *= cplx{std::ldexp(1.0, -squarings), 0.0};
  }

  const CMatrix ident = CMatrix::identity(n);
  const CMatrix a2 = a * a;
  const CMatrix a4 = a2 * a2;
  const CMatrix a6 = a4 * a2;
  // U = A [ A6 (b13 A6 + b11 A4 + b9 A2) + b7 A6 + b5 A4 + b3 A2 + b1 I ]
  CMatrix w1 = a6 * cplx{b13[13], 0.0} + a4 * cplx{b13[11], 0.0} +
               a2 * cplx{b13[9], 0.0};
  CMatrix w2 = a6 * cplx{b13[7], 0.0} + a4 * cplx{b13[5], 0.0} +
               a2 * cplx{b13[3], 0.0} + ident * cplx{b13[1], 0.0};
  CMatrix u = a * (a6 * w1 + w2);
  // V = A6 (b12 A6 + b10 A4 + b8 A2) + b6 A6 + b4 A4 + b2 A2 + b0 I
  CMatrix z1 = a6 * cplx{b13[12], 0.0} + a4 * cplx{b13[10], 0.0} +
               a2 * cplx{b13[8], 0.0};
  CMatrix z2 = a6 * cplx{b13[6], 0.0} + a4 * cplx{b13[4], 0.0} +
               a2 * cplx{b13[2], 0.0} + ident * cplx{b13[0], 0.0};
  CMatrix v = a6 * z1 + z2;

  CMatrix num = v + u;
  CMatrix den = v - u;
  CMatrix r = lu_solve(std::move(den), std::move(num));
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

double hermite_function(std::size_t n, double x) {
  return hermite_functions(n + 1, x)[n];
}

std::vector<double> hermite_functions(std::size_t nmax, double x) {
  std::vector<double> psi(nmax, 0.0);
  if (nmax == 0) return psi;
  const double psi0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
  psi[0] = psi0;
  if (nmax > 1) psi[1] = std::sqrt(2.0) * x * psi0;
  for (std::size_t n = 1; n + 1 < nmax; ++n) {
    const double dn = static_cast<double>(n);
    psi[n + 1] = std::sqrt(2.0 / (dn + 1.0)) * x * psi[n] -
                 std::sqrt(dn / (dn + 1.0)) * psi[n - 1];
  }
  return psi;
}

FockState coherent_state(cplx z, std::size_t n, bool* truncation_warning) {
  FockState st;
  st.dim = n;
  st.amplitudes.assign(n, cplx{0.0, 0.0});
  cplx c = std::exp(cplx{-0.5 * std::norm(z), 0.0});
  for (std::size_t m = 0; m < n; ++m) {
    st.amplitudes[m] = c;
    c *= z / std::sqrt(static_cast<double>(m + 1));
  }
  if (truncation_warning != nullptr)
    *truncation_warning = std::norm(z) > static_cast<double>(n) / 4.0;
  return st;
}

FockState vacuum_state(std::size_t n) {
  FockState st;
  st.dim = n;
  st.amplitudes.assign(n, cplx{0.0, 0.0});
  st.amplitudes[0] = cplx{1.0, 0.0};
  return st;
}

namespace {

void format_pair(std::ostream& os, const cplx& v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g,%.17g", v.real(), v.imag());
  os << buf;
}

cplx parse_pair(const std::string& tok, std::size_t line_no) {
  const auto comma = tok.find(',');
  if (comma == std::string::npos)
    throw ParseError("dump line " + std::to_string(line_no) +
                     ": expected re,im pair, got '" + tok + "'");
  double re = 0.0, im = 0.0;
  auto r1 = std::from_chars(tok.data(), tok.data() + comma, re);
  auto r2 =
      std::from_chars(tok.data() + comma + 1, tok.data() + tok.size(), im);
  if (r1.ec != std::errc{} || r2.ec != std::errc{})
    throw ParseError("dump line " + std::to_string(line_no) +
                     ": bad number in '" + tok + "'");
  return cplx{re, im};
}

std::size_t parse_header(std::istream& is, const std::string& tag) {
  std::string line;
  if (!std::getline(is, line))
    throw ParseError("dump: missing header line");
  std::istringstream hs(line);
  std::string word, dim_field;
  hs >> word >> dim_field;
  if (word != tag || dim_field.rfind("N=", 0) != 0)
    throw ParseError("dump: expected header '" + tag + " N=<dim>', got '" +
                     line + "'");
  std::size_t n = 0;
  auto res = std::from_chars(dim_field.data() + 2,
                             dim_field.data() + dim_field.size(), n);
  if (res.ec != std::errc{} || n < 2)
    throw ParseError("dump: bad dimension in header '" + line + "'");
  return n;
}

}  // namespace

void dump_operator(std::ostream& os, const CMatrix& op) {
  os << "fock-op N=" << op.rows() << "\n";
  for (std::size_t i = 0; i < op.rows(); ++i) {
    for (std::size_t j = 0; j < op.cols(); ++j) {
      if (j != 0) os << ' ';
      format_pair(os, op(i, j));
    }
    os << "\n";
  }
}

CMatrix load_operator(std::istream& is) {
  const std::size_t n = parse_header(is, "fock-op");
  CMatrix op(n, n);
  std::string line;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(is, line))
      throw ParseError("fock-op: truncated at row " + std::to_string(i));
    std::istringstream ls(line);
    std::string tok;
    for (std::size_t j = 0; j < n; ++j) {
      if (!(ls >> tok))
        throw ParseError("fock-op: row " + std::to_string(i) + " has only " +
                         std::to_string(j) + " of " + std::to_string(n) +
                         " entries");
      op(i, j) = parse_pair(tok, i + 2);
    }
  }
  return op;
}

void dump_state(std::ostream& os, const FockState& st) {
  os << "fock-state N=" << st.dim << "\n";
  for (std::size_t i = 0; i < st.dim; ++i) {
    format_pair(os, st.amplitudes[i]);
    os << "\n";
  }
}

FockState load_state(std::istream& is) {
  const std::size_t n = parse_header(is, "fock-state");
  FockState st;
  st.dim = n;
  st.amplitudes.resize(n);
  std::string line;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(is, line))
      throw ParseError("fock-state: truncated at entry " + std::to_string(i));
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    st.amplitudes[i] = parse_pair(tok, i + 2);
  }
  return st;
}

}  // namespace fresnel
