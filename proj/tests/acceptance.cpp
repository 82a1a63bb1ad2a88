// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cstdio>
#include <numbers>
#include <string>

#include "specsep/verification.hpp"

using namespace specsep;

namespace {

constexpr double kPi = std::numbers::pi;

struct Tolerances {
  static constexpr double theorem2_spread = 1e-3;
  static constexpr int theorem2_indices = 20;
  static constexpr int pairing_vectors = 12;
  static constexpr double swap = 1e-8;
  static constexpr int swap_points = 100;
  static constexpr double eigen = 1e-8;
  static constexpr double id1 = 1e-3;
  static constexpr double id2 = 1e-2;
  static constexpr double reduction = 1e-9;
  static constexpr double d_alt = 1e-10;
  static constexpr double d_jump = 1e-6;
  static constexpr double glue_matched = 1e-12;
  static constexpr double glue_report = 1e-10;
  static constexpr double matchings_seconds = 60.0;
};

int failures = 0;

void verdict(bool ok, const std::string& name, const std::string& detail) {
  std::printf("%s %-16s %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  failures += ok ? 0 : 1;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double drift_of(const Report& r) { return r.measured.value("truncation_drift", 1.0); }

void matchings() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  for (int p = 1; p <= 10; ++p) ok = ok && parity_sum(p) == 1;
  const Report r = verify_matchings(10);
  const double secs = seconds_since(t0);
  ok = ok && r.pass && r.truncation["sigma_exhaustive_up_to"] == 8 && secs < Tolerances::matchings_seconds;
  verdict(ok, "matchings", fmt("parity sums p<=10, sigma exhaustive p<=8, %.0f checks in %.2fs", r.measured["checks"].get<double>(), secs));
}

void theorem2() {
  bool ok = true;
  std::string detail;
  for (int p = 1; p <= 3; ++p) {
    const Report r = verify_theorem2(p, 200, Regularization::abel, Tolerances::theorem2_spread);
    ok = ok && r.pass && r.ratio->count >= Tolerances::theorem2_indices && r.ratio->spread < Tolerances::theorem2_spread;
    detail += fmt("p=%.0f rho=%+.6f spread=%.1e ", p, r.ratio->mean.real(), r.ratio->spread);
  }
  verdict(ok, "theorem2", detail);
}

void pairing_lemma() {
  bool ok = true;
  std::string detail;
  for (int p = 1; p <= 7; ++p) {
    const auto vectors = pairing_lemma_vectors(p, Tolerances::pairing_vectors, 1);
    const Report r = verify_pairing_lemma(p / 2, p % 2 == 1, vectors);
    bool exact = r.lhs.size() >= 10;
    for (const auto& v : r.lhs) exact = exact && v == r.lhs.front();
    ok = ok && r.pass && exact;
    detail += fmt("p=%.0f ratio=%.4g ", p, r.lhs.front().real() / r.rhs.front().real());
  }
  verdict(ok, "pairing-lemma", detail);
}

void swap() {
  bool ok = true;
  std::string detail;
  for (int n = 1; n <= 4; ++n) {
    const Report r = verify_swap(n, 10, Tolerances::swap_points, 1, Tolerances::swap);
    // n = 1 has no Vandermonde factor, so both sign variants agree there
    const bool disc = r.measured["discriminates"].get<bool>();
    ok = ok && r.pass && r.max_error < Tolerances::swap && (n == 1 || disc);
    detail += fmt("n=%.0f err=%.1e ", n, r.max_error) + (disc ? "discriminates " : "");
  }
  verdict(ok, "swap", detail);
}

void eigen() {
  bool ok = true;
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const Report r = verify_eigen(n, 3, 5, 20, 1, Tolerances::eigen);
    ok = ok && r.pass;
    worst = std::max(worst, r.max_error);
  }
  verdict(ok && worst < Tolerances::eigen, "eigen", fmt("n<=3 degree<=3 max relative error %.1e", worst));
}

Report id1_report;

void id1() {
  const Truncation trunc{12, 64, 40.0, 3};
  id1_report = verify_id1(trunc, 6, 1, Tolerances::id1);
  const Report& r = id1_report;
  const bool ok = r.pass && r.ratio->count >= 5 && r.ratio->spread < Tolerances::id1 && drift_of(r) < Tolerances::id1;
  verdict(ok, "id1", fmt("constant %.6f (ratio to -4pi^2 %.6f), spread %.1e", r.ratio->mean.real(),
                         r.ratio->mean.real() / (-4.0 * kPi * kPi), r.ratio->spread) +
                         fmt(", drift %.1e", drift_of(r)));
}

void id2_and_summation() {
  const Truncation trunc;
  bool ok = true;
  const Report id2 = verify_id2(trunc, 6, 1, Tolerances::id2);
  ok = ok && id2.pass && id2.ratio->spread < Tolerances::id2 && drift_of(id2) < Tolerances::id2;
  std::string detail = fmt("id2 c=%.4f%+.4fi ", id2.ratio->mean.real(), id2.ratio->mean.imag());
  for (auto [n, k] : {std::pair{2, 0}, {2, 1}, {3, 0}, {3, 1}}) {
    const Report r = verify_summation_lemma(n, 1, k, trunc, 6, 1, 2, Tolerances::id2);
    ok = ok && r.pass && r.ratio->spread < Tolerances::id2 && drift_of(r) < Tolerances::id2;
    detail += fmt("(%.0f,1,%.0f) ", n, k) + fmt("c=%.4f%+.4fi ", r.ratio->mean.real(), r.ratio->mean.imag());
    if (n == 2 && k == 1) {
      const double gap = std::abs(r.ratio->mean - id1_report.ratio->mean) / std::abs(id1_report.ratio->mean);
      ok = ok && gap < Tolerances::reduction;
      detail += fmt("[vs id1 %.1e] ", gap);
    }
  }
  verdict(ok, "id2+summation", detail);
}

void d_kernel() {
  const Report r = verify_d_kernel(1);
  const double alt = r.measured["alt_max_error"], jump = r.measured["continuity_max_jump"];
  verdict(r.pass && alt < Tolerances::d_alt && jump < Tolerances::d_jump, "d-kernel",
          fmt("alt form error %.1e, diagonal jump %.1e", alt, jump));
}

void glueing() {
  const Report r = verify_glueing(1);
  const double matched = r.measured["matched_max_residual"], rep = r.measured["perturbation_report_error"];
  verdict(r.pass && matched < Tolerances::glue_matched && rep < Tolerances::glue_report, "glueing",
          fmt("matched residual %.1e, perturbation report error %.1e", matched, rep));
}

void determinism() {
  SuiteConfig cfg;
  cfg.seed = 7;
  bool ok = true;
  for (const auto& name : suite_names()) {
    const std::string a = to_json(run_suite(name, cfg), false).dump();
    const std::string b = to_json(run_suite(name, cfg), false).dump();
    ok = ok && a == b;
  }
  verdict(ok, "determinism", "all suites twice with seed 7, reports compared byte for byte without wall time");
}

}  // namespace

int main() {
  try {
    matchings();
    theorem2();
    pairing_lemma();
    swap();
    eigen();
    id1();
    id2_and_summation();
    d_kernel();
    glueing();
    determinism();
  } catch (const std::exception& e) {
    std::printf("FAIL internal error: %s\n", e.what());
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
