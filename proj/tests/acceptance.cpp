// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#include "fresnel/verify.hpp"

namespace {

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void report(int index, const std::string& label, bool pass, double worst,
            double runtime_s, double runtime_limit_s) {
  const bool time_ok = runtime_limit_s <= 0.0 || runtime_s <= runtime_limit_s;
  if (!pass || !time_ok) ++failures;
  std::printf("CRITERION %d [%s] %-38s worst %.3e  (%.1f s)\n", index,
              (pass && time_ok) ? "PASS" : "FAIL", label.c_str(), worst,
              runtime_s);
  if (!time_ok)
    std::printf("            runtime %.1f s exceeded the %.0f s budget\n",
                runtime_s, runtime_limit_s);
}

// worst residual-to-tolerance ratio over the report; pass = all cases pass
struct SuiteOutcome {
  bool pass;
  double worst;
};

SuiteOutcome reduce(const fresnel::VerificationReport& rep) {
  double worst = 0.0;
  for (const auto& c : rep.cases) worst = std::max(worst, c.residual);
  return SuiteOutcome{rep.all_pass(), worst};
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  fresnel::VerifyOptions opt;

  // 1. group law, 100 seeded pairs at dim 128
  {
    const auto t0 = clock::now();
    opt = fresnel::VerifyOptions{128, 20250809, 100};
    const auto out = reduce(fresnel::verify_group(opt));
    report(1, "group law F(m2)F(m1) = +/- F(m2 m1)", out.pass, out.worst,
           seconds_since(t0), 60.0);
  }
  // 2. kernel identity at dim 256
  {
    const auto t0 = clock::now();
    opt = fresnel::VerifyOptions{256, 20250809, 100};
    const auto out = reduce(fresnel::verify_kernel(opt));
    report(2, "kernel reconstruction vs analytic kernel", out.pass, out.worst,
           seconds_since(t0), 120.0);
  }
  // 3. quantum ABCD law, 50 seeded pairs at dim 128
  {
    const auto t0 = clock::now();
    opt = fresnel::VerifyOptions{128, 20250809, 100};  // trials/2 pairs
    const auto out = reduce(fresnel::verify_abcd(opt));
    report(3, "triple-route quantum ABCD law", out.pass, out.worst,
           seconds_since(t0), 0.0);
  }
  // 4. operator identities
  {
    const auto t0 = clock::now();
    opt = fresnel::VerifyOptions{128, 20250809, 100};
    const auto out = reduce(fresnel::verify_identities(opt));
    report(4, "operator identities + collapses", out.pass, out.worst,
           seconds_since(t0), 0.0);
  }
  // 5. damped oscillator
  {
    const auto t0 = clock::now();
    opt = fresnel::VerifyOptions{128, 20250809, 100};
    const auto out = reduce(fresnel::verify_damped(opt));
    report(5, "damped-oscillator ABCD application", out.pass, out.worst,
           seconds_since(t0), 0.0);
  }
  // 6. classical layer, 1000 seeded trials
  {
    const auto t0 = clock::now();
    opt = fresnel::VerifyOptions{128, 20250809, 1000};
    const auto out = reduce(fresnel::verify_classical(opt));
    report(6, "classical Mobius + (s,r) homomorphism", out.pass, out.worst,
           seconds_since(t0), 5.0);
  }
  // 7. numeric Fresnel transform
  {
    const auto t0 = clock::now();
    opt = fresnel::VerifyOptions{128, 20250809, 100};
    const auto out = reduce(fresnel::verify_transform(opt));
    report(7, "Gaussian through free space vs oracle", out.pass, out.worst,
           seconds_since(t0), 0.0);
  }

  if (failures == 0) {
    std::printf("ACCEPTANCE: all 7 criteria passed\n");
    return 0;
  }
  std::printf("ACCEPTANCE: %d criterion(s) failed\n", failures);
  return 1;
}
