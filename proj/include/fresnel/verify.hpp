#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fresnel/matrix_optics.hpp"

namespace fresnel {

// Deterministic uniform generator; the double mapping is fixed here rather
// than taken from the standard library so seeded runs match across
// platforms and compilers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  double uniform(double lo, double hi);
  std::uint64_t next_u64();

 private:
  std::uint64_t state_[4];
};

// lens(c) * magnifier(a) * free(b), c,b in [-2,2], a in [0.5,2]; exact
// det 1 by construction. Rejects draws with any |entry| > entry_bound and,
// when squeeze_bound > 0, draws with |r| of abcd_to_sr above it.
RayMatrix random_unimodular(Rng& rng, double entry_bound,
                            double squeeze_bound = 0.0);

struct VerificationCase {
  std::string name;
  double residual;
  double tolerance;
  std::optional<cplx> phase;
  bool pass;
};

struct VerificationReport {
  std::string suite_name;
  std::vector<VerificationCase> cases;

  int passed() const;
  int failed() const;
  bool all_pass() const { return failed() == 0; }
  void add(const std::string& name, double residual, double tolerance,
           std::optional<cplx> phase = std::nullopt);
  void merge(const VerificationReport& other);
};

void print_report(std::ostream& os, const VerificationReport& report);

struct VerifyOptions {
  std::size_t dim = 128;
  std::uint64_t seed = 1;
  std::size_t trials = 100;
};

// classical layer: Mobius composition, (s,r) homomorphism, decomposition
VerificationReport verify_classical(const VerifyOptions& opt);
// group law + unitarity + route equivalence
VerificationReport verify_group(const VerifyOptions& opt);
// normal-ordered Gaussian operator identities + special-case collapses
VerificationReport verify_identities(const VerifyOptions& opt);
// kernel reconstruction vs analytic Fresnel kernel (dim >= 128 sensible)
VerificationReport verify_kernel(const VerifyOptions& opt);
// quantum ABCD law triple-route agreement
VerificationReport verify_abcd(const VerifyOptions& opt);
// damped-oscillator application
VerificationReport verify_damped(const VerifyOptions& opt);
// numeric Fresnel transform vs closed-form Gaussian oracle
VerificationReport verify_transform(const VerifyOptions& opt);

// selector: all | group | abcd | kernel | damped | identities
//           (+ classical, transform, also covered by "all")
VerificationReport run_suite(const std::string& selector,
                             const VerifyOptions& opt);

}  // namespace fresnel
