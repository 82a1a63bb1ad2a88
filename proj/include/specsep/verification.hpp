#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "specsep/kernels.hpp"
#include "specsep/matchings.hpp"
#include "specsep/projectors.hpp"
#include "specsep/serialize.hpp"

namespace specsep {

struct RatioStats {
  cplx mean{0.0};
  double spread = 0.0;  // max |ratio - mean| / |mean|
  std::size_t count = 0;
};

/// Fits a single constant lhs ≈ c·rhs from paired samples with nonzero rhs.
RatioStats ratio_stats(const std::vector<cplx>& lhs, const std::vector<cplx>& rhs);

struct Report {
  std::string suite;
  Json params = Json::object();
  std::vector<cplx> lhs;
  std::vector<cplx> rhs;
  std::optional<RatioStats> ratio;
  Json truncation = Json::object();
  Json measured = Json::object();  // fitted constants next to printed ones
  double tolerance = 0.0;
  double max_error = 0.0;
  bool pass = false;
  std::vector<std::string> failures;
  std::uint64_t seed = 0;
  double wall_time = 0.0;
};

Json to_json(const Report& r, bool include_wall_time = true);

struct Truncation {
  int c_max = 12;
  int m_max = 64;
  double lambda_max = 40.0;
  int tail_terms = 3;

  Truncation doubled() const { return {2 * c_max, 2 * m_max, 2 * lambda_max, tail_terms}; }
};

Json to_json(const Truncation& t);

/// Parity lemmas, the involution J and the σ·ζ₀ sign formula; `parity_fn` allows mutants.
Report verify_matchings(int p_max, const std::function<int(const Matching&)>& parity_fn = parity);

/// i^m·⟨𝓔^a_p, Π cot(φ_{2l-1}/2)δ(φ_{2l-1}+φ_{2l}) [·δ(φ_p)]⟩ for each a, p = 2m or 2m+1.
Report verify_pairing_lemma(int m, bool odd, const std::vector<std::vector<int>>& a_list);
/// Default index vectors: `count` strictly decreasing vectors drawn from the seed.
std::vector<std::vector<int>> pairing_lemma_vectors(int p, int count, std::uint64_t seed);

Report verify_theorem2(int p, int a_bound, Regularization reg, double tolerance = 1e-3);

Report verify_swap(int n, int sig_samples, int point_samples, std::uint64_t seed, double tolerance = 1e-8);

Report verify_eigen(int n, int degree, int sig_samples, int point_samples, std::uint64_t seed,
                    double tolerance = 1e-8);

/// Gaussian test data on the chart (θ, t).
struct LineTest {
  int theta_freq = 0;
  double width = 1.0;
  double shift = 0.0;   // e^{shift·t}
  double quadratic = 0.0;  // (1 + quadratic·t²)
  ExpPoly as_exppoly(const Domain& domain, int theta_index, int line_index) const;
};
std::vector<LineTest> id1_tests(int count, std::uint64_t seed);

/// Σ_{|m|≤M} ∫_0^Λ ⟨g, ξ'_{m,λ}⟩ dλ for one Gaussian test.
cplx id1_lhs(const LineTest& g, const Truncation& trunc);
Report verify_id1(const Truncation& trunc, int test_count, std::uint64_t seed, double tolerance = 1e-3);

/// ∫_0^π 2e^{2ibu} D'_{m,λ}(2u, 0) du.
cplx d_prime_moment(int b, int m, double lambda);
/// ∫_0^∞ d_prime_moment(b, m, λ) dλ with the algebraic tail fitted beyond Λ.
cplx d_prime_lambda_integral(int b, int m, const Truncation& trunc);
/// Σ_{|m|≤M} ∫_{λ>0} ⟨f, D'_{m,λ}⟩ dλ for a trigonometric polynomial f(φ₁, φ₂).
cplx id2_lhs(const ExpPoly& f, const Truncation& trunc);
std::vector<ExpPoly> id2_tests(int count, std::uint64_t seed);
Report verify_id2(const Truncation& trunc, int test_count, std::uint64_t seed, double tolerance = 1e-2);

/// Test data h_k on cartan_domain(n, k) with the required symmetry.
std::vector<ExpPoly> summation_tests(int n, int k, int count, std::uint64_t seed);
/// Throws if h is not skew in the φ's or not even in each t_j.
void check_summation_symmetry(int n, int k, const ExpPoly& h);
cplx summation_lhs(int n, int r, int k, const ExpPoly& h, const Truncation& trunc, int workers = 1);
cplx summation_rhs(int n, int k, const ExpPoly& h);
Report verify_summation_lemma(int n, int r, int k, const Truncation& trunc, int test_count, std::uint64_t seed,
                              int workers = 1, double tolerance = 1e-2);

Report verify_d_kernel(std::uint64_t seed);

Report verify_glueing(std::uint64_t seed);

/// Knobs shared by the suite runner and the CLI.
struct SuiteConfig {
  std::optional<int> n, r, k, p;
  int p_max = 10;
  Truncation trunc;
  int a_bound = 200;
  Regularization reg = Regularization::abel;
  std::optional<double> tol;
  int workers = 1;
  std::uint64_t seed = 1;
};

struct SuiteResult {
  std::string name;
  std::vector<Report> cases;
  bool pass() const;
};

const std::vector<std::string>& suite_names();
/// Runs one named suite over its configured parameter range; throws std::invalid_argument on unknown names.
SuiteResult run_suite(const std::string& name, const SuiteConfig& config);

Json to_json(const SuiteResult& s, bool include_wall_time = true);

}  // namespace specsep
