#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "fresnel/errors.hpp"
#include "fresnel/fock_engine.hpp"
#include "fresnel/fresnel_operator.hpp"
#include "fresnel/matrix_optics.hpp"
#include "fresnel/quantum_abcd.hpp"
#include "fresnel/system_file.hpp"
#include "fresnel/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitPole = 3;
constexpr int kExitDomain = 4;
constexpr int kExitVerifyFailed = 5;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct MatrixArgs {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;
  bool auto_correct_d = false;

  fresnel::RayMatrix build() const {
    double dd = d;
    if (auto_correct_d && a != 0.0) dd = (1.0 + b * c) / a;
    const double det = a * dd - b * c;
    if (std::abs(det - 1.0) > 1e-9)
      throw fresnel::DomainError("matrix determinant " + fmt(det) +
                                 " deviates from 1 beyond 1e-9");
    // construction tolerance is tighter; scale the residual drift away
    const double s = 1.0 / std::sqrt(det);
    return fresnel::make_matrix(a * s, b * s, c * s, dd * s);
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--A", a, "matrix entry A")->required();
    cmd->add_option("--B", b, "matrix entry B")->required();
    cmd->add_option("--C", c, "matrix entry C")->required();
    cmd->add_option("--D", d, "matrix entry D")->required();
    cmd->add_flag("--auto-correct-d", auto_correct_d,
                  "replace D by (1+BC)/A before the det check");
  }
};

std::size_t default_dim() {
  if (const char* env = std::getenv("FRESNEL_DIM")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 2 && v <= 10000) return static_cast<std::size_t>(v);
  }
  return 128;
}

int cmd_trace(const std::string& system_path, double r, double alpha) {
  const fresnel::OpticalSystem sys = fresnel::load_system_file(system_path);
  fresnel::Ray ray{r, alpha};
  std::cout << "input: r=" << fmt(ray.height) << " alpha=" << fmt(ray.direction)
            << "\n";
  std::size_t idx = 0;
  for (const auto& el : sys.elements) {
    ray = fresnel::trace_ray(el.matrix, ray);
    std::cout << "after element " << idx++ << " (" << el.kind
              << "): r=" << fmt(ray.height) << " alpha=" << fmt(ray.direction)
              << "\n";
  }
  std::cout << "output: r=" << fmt(ray.height)
            << " alpha=" << fmt(ray.direction) << "\n";
  return kExitOk;
}

int cmd_beam(const std::string& system_path, double q_re, double q_im,
             const std::string& out_path) {
  const fresnel::OpticalSystem sys = fresnel::load_system_file(system_path);
  if (q_im <= 0.0)
    throw fresnel::DomainError("beam: Im q0 must be positive");
  fresnel::QParam q{fresnel::cplx{q_re, q_im}};
  std::ostringstream csv;
  csv << "element,kind,re_q,im_q\n";
  csv << "-1,input," << fmt(q.q.real()) << "," << fmt(q.q.imag()) << "\n";
  std::cout << "q0 = " << fmt(q.q.real()) << " + " << fmt(q.q.imag()) << "i\n";
  std::size_t idx = 0;
  for (const auto& el : sys.elements) {
    try {
      q = fresnel::propagate_q(el.matrix, q);
    } catch (const fresnel::PoleError& e) {
      throw fresnel::PoleError("element " + std::to_string(idx) + " (" +
                               el.kind + "): " + e.what());
    }
    std::cout << "after element " << idx << " (" << el.kind
              << "): q = " << fmt(q.q.real()) << " + " << fmt(q.q.imag())
              << "i\n";
    csv << idx << "," << el.kind << "," << fmt(q.q.real()) << ","
        << fmt(q.q.imag()) << "\n";
    ++idx;
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw fresnel::DomainError("cannot open '" + out_path + "'");
    out << csv.str();
  }
  return kExitOk;
}

int cmd_operator(const MatrixArgs& margs, std::size_t dim,
                 const std::string& route, const std::string& out_path) {
  const fresnel::RayMatrix m = margs.build();
  fresnel::FresnelRoute r;
  if (route == "normal") {
    r = fresnel::FresnelRoute::NormalOrder;
  } else if (route == "canonical") {
    r = fresnel::FresnelRoute::Canonical;
  } else {
    throw fresnel::DomainError("route must be 'normal' or 'canonical'");
  }
  const fresnel::FresnelBuild build = fresnel::build_fresnel(m, dim, r);
  const double resid =
      fresnel::unitarity_residual(build.op, fresnel::interior_dim(dim));
  std::cout << "unitarity residual (interior " << fresnel::interior_dim(dim)
            << "): " << fmt(resid) << "\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw fresnel::DomainError("cannot open '" + out_path + "'");
    fresnel::dump_operator(out, build.op);
    std::cout << "wrote " << out_path << "\n";
  }
  return kExitOk;
}

int cmd_kernel(const MatrixArgs& margs, std::size_t dim, double lo, double hi,
               std::size_t points, const std::string& out_path) {
  const fresnel::RayMatrix m = margs.build();
  const fresnel::CMatrix op = fresnel::fresnel_normal_order(m, dim);
  const fresnel::KernelComparison cmp =
      fresnel::compare_kernels(m, op, lo, hi, points);
  std::cout << "max abs deviation: " << fmt(cmp.max_abs_deviation) << "\n";
  std::cout << "fitted global phase: " << fmt(cmp.phase.real()) << " + "
            << fmt(cmp.phase.imag()) << "i\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw fresnel::DomainError("cannot open '" + out_path + "'");
    out << "x1,x2,re_analytic,im_analytic,re_fock,im_fock,abs_err\n";
    for (std::size_t i = 0; i < cmp.grid.size(); ++i) {
      for (std::size_t j = 0; j < cmp.grid.size(); ++j) {
        const fresnel::cplx ka = cmp.analytic[i][j];
        const fresnel::cplx kf = cmp.fock[i][j];
        out << fmt(cmp.grid[j]) << "," << fmt(cmp.grid[i]) << ","
            << fmt(ka.real()) << "," << fmt(ka.imag()) << "," << fmt(kf.real())
            << "," << fmt(kf.imag()) << "," << fmt(std::abs(kf - ka)) << "\n";
      }
    }
    std::cout << "wrote " << out_path << "\n";
  }
  return kExitOk;
}

int cmd_verify(const std::string& selector, std::size_t dim,
               std::uint64_t seed, std::size_t trials,
               const std::string& out_path) {
  fresnel::VerifyOptions opt;
  opt.dim = dim;
  opt.seed = seed;
  opt.trials = trials;
  const fresnel::VerificationReport rep = fresnel::run_suite(selector, opt);
  fresnel::print_report(std::cout, rep);
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw fresnel::DomainError("cannot open '" + out_path + "'");
    fresnel::print_report(out, rep);
  }
  return rep.all_pass() ? kExitOk : kExitVerifyFailed;
}

int cmd_damped(double gamma, double omega0, double t_max, std::size_t steps,
               std::size_t dim, const std::string& out_path) {
  std::ostringstream csv;
  csv << "t,re_q2,im_q2,squeeze_magnitude,fidelity_vs_operator_route\n";
  for (std::size_t i = 0; i <= steps; ++i) {
    const double t =
        (steps == 0) ? 0.0 : t_max * static_cast<double>(i) / steps;
    const fresnel::DampedOscillatorParams p(gamma, omega0, t);
    const fresnel::RayMatrix m1 = fresnel::lens_param(-gamma);
    const fresnel::RayMatrix m2 = fresnel::magnifier(std::exp(-gamma * t));
    const fresnel::SqueezedVacuumDescriptor d =
        fresnel::abcd_law_apply(m2, fresnel::descriptor_from_matrix(m1, dim));
    const fresnel::FockState law_state = fresnel::squeezed_vacuum_from_q(d);
    const fresnel::CMatrix ui = fresnel::u_inverse(p, dim);
    fresnel::FockState op_state = fresnel::vacuum_state(dim);
    op_state.amplitudes = ui.apply(op_state.amplitudes);
    const double fid = fresnel::state_fidelity(law_state, op_state);
    csv << fmt(t) << "," << fmt(d.q.q.real()) << "," << fmt(d.q.q.imag())
        << "," << fmt(fresnel::squeeze_magnitude(d)) << "," << fmt(fid)
        << "\n";
  }
  std::cout << csv.str();
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw fresnel::DomainError("cannot open '" + out_path + "'");
    out << csv.str();
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "fresnel: ABCD matrix optics and the quantum optical ABCD law on a "
      "truncated Fock space"};
  app.require_subcommand(1);

  std::size_t dim = default_dim();
  std::uint64_t seed = 1;
  std::string out_path;
  app.add_option("--dim", dim, "Fock-space truncation dimension")
      ->capture_default_str();
  app.add_option("--seed", seed, "seed for randomized suites")
      ->capture_default_str();
  app.add_option("--out", out_path, "output file path");

  // trace
  auto* trace = app.add_subcommand("trace", "trace a ray through a system file");
  std::string trace_file;
  double ray_r = 0.0, ray_alpha = 0.0;
  trace->add_option("system", trace_file, "system description JSON")->required();
  trace->add_option("--r", ray_r, "input ray height")->required();
  trace->add_option("--alpha", ray_alpha, "input ray direction-cosine")
      ->required();

  // beam
  auto* beam = app.add_subcommand("beam", "propagate a Gaussian-beam q parameter");
  std::string beam_file;
  double q_re = 0.0, q_im = 1.0;
  beam->add_option("system", beam_file, "system description JSON")->required();
  beam->add_option("--qre", q_re, "Re q0")->capture_default_str();
  beam->add_option("--qim", q_im, "Im q0 (> 0)")->capture_default_str();

  // operator
  auto* op = app.add_subcommand("operator", "build a Fresnel operator and dump it");
  MatrixArgs op_matrix;
  op_matrix.attach(op);
  std::string route = "normal";
  op->add_option("--route", route, "normal | canonical")->capture_default_str();

  // kernel
  auto* kern = app.add_subcommand(
      "kernel", "compare Fock-reconstructed and analytic Fresnel kernels");
  MatrixArgs kern_matrix;
  kern_matrix.attach(kern);
  double klo = -2.0, khi = 2.0;
  std::size_t kpts = 41;
  kern->add_option("--lo", klo, "grid lower bound")->capture_default_str();
  kern->add_option("--hi", khi, "grid upper bound")->capture_default_str();
  kern->add_option("--points", kpts, "grid points per axis")
      ->capture_default_str();

  // verify
  auto* ver = app.add_subcommand("verify", "run verification suites");
  std::string selector = "all";
  std::size_t trials = 100;
  ver->add_option("selector", selector,
                  "all|group|abcd|kernel|damped|identities")
      ->capture_default_str();
  ver->add_option("--trials", trials, "random trials per suite")
      ->capture_default_str();

  // damped
  auto* damp = app.add_subcommand(
      "damped", "damped-oscillator evolution CSV (quantum ABCD law)");
  double gamma = 0.1, omega0 = 1.0, t_max = 1.0;
  std::size_t steps = 10;
  damp->add_option("--gamma", gamma, "damping")->capture_default_str();
  damp->add_option("--omega0", omega0, "bounce frequency")->capture_default_str();
  damp->add_option("--tmax", t_max, "final time")->capture_default_str();
  damp->add_option("--steps", steps, "number of CSV rows minus one")
      ->capture_default_str();

  // allow --dim/--seed/--out after the subcommand name as well
  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (trace->parsed()) return cmd_trace(trace_file, ray_r, ray_alpha);
    if (beam->parsed()) return cmd_beam(beam_file, q_re, q_im, out_path);
    if (op->parsed()) return cmd_operator(op_matrix, dim, route, out_path);
    if (kern->parsed())
      return cmd_kernel(kern_matrix, dim, klo, khi, kpts, out_path);
    if (ver->parsed()) return cmd_verify(selector, dim, seed, trials, out_path);
    if (damp->parsed())
      return cmd_damped(gamma, omega0, t_max, steps, dim, out_path);
  } catch (const fresnel::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const fresnel::PoleError& e) {
    std::cerr << "pole: " << e.what() << "\n";
    return kExitPole;
  } catch (const fresnel::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const fresnel::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}
