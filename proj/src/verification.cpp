#include "specsep/verification.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "specsep/diagrams.hpp"
#include "specsep/quadrature.hpp"

namespace specsep {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};
constexpr std::size_t kMaxListedFailures = 20;

class Stopwatch {
 public:
  explicit Stopwatch(double& sink) : sink_(sink), start_(std::chrono::steady_clock::now()) {}
  ~Stopwatch() { sink_ = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }
  Stopwatch(const Stopwatch&) = delete;
  Stopwatch& operator=(const Stopwatch&) = delete;

 private:
  double& sink_;
  std::chrono::steady_clock::time_point start_;
};

void note_failure(Report& r, const std::string& what) {
  if (r.failures.size() < kMaxListedFailures) r.failures.push_back(what);
}

/// Runs fn(i) for i < count on up to `workers` threads; results land by index.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, int workers, Fn fn) {
  std::vector<T> out(count);
  const auto threads = static_cast<std::size_t>(std::clamp(workers, 1, 64));
  if (threads == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(threads, count); ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          out[i] = fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

std::string describe(const std::vector<int>& v) {
  std::ostringstream s;
  s << '(';
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  s << ')';
  return s.str();
}

Json complex_list(const std::vector<cplx>& v) {
  Json j = Json::array();
  for (const auto& z : v) j.push_back(to_json(z));
  return j;
}

double relative_change(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(a), 1e-300); }

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

ExpPoly antisymmetric_exponential(const Domain& dom, const std::vector<int>& a) {
  ExpPoly e(dom);
  Permutation sigma(a.size());
  std::iota(sigma.begin(), sigma.end(), 1);
  do {
    std::vector<cplx> freq(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) freq[i] = a[static_cast<std::size_t>(sigma[i] - 1)];
    e += ExpPoly::exponential(dom, freq, static_cast<double>(permutation_sign(sigma)));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return e;
}

// Random draws shared by the kernel suites.
Signature random_signature(std::mt19937_64& rng, int n, int r) {
  std::vector<int> pool(13);
  std::iota(pool.begin(), pool.end(), -6);
  std::shuffle(pool.begin(), pool.end(), rng);
  std::vector<int> c(pool.begin(), pool.begin() + (n - 2 * r));
  std::sort(c.rbegin(), c.rend());
  std::uniform_int_distribution<int> mdist(-3, 3);
  std::uniform_real_distribution<double> ldist(0.2, 2.5);
  std::vector<int> m;
  std::vector<double> lambda;
  for (int q = 0; q < r; ++q) {
    m.push_back(mdist(rng));
    lambda.push_back(ldist(rng));
  }
  std::sort(lambda.rbegin(), lambda.rend());
  return Signature::checked(n, c, m, lambda);
}

CartanPoint random_point(std::mt19937_64& rng, int n, int k) {
  std::uniform_real_distribution<double> angle(-kPi, kPi), line(-1.5, 1.5);
  CartanPoint a;
  a.k = k;
  while (true) {
    a.phi.clear();
    for (int i = 0; i < n - 2 * k; ++i) a.phi.push_back(angle(rng));
    double gap = 1.0;
    for (std::size_t p = 0; p < a.phi.size(); ++p)
      for (std::size_t q = p + 1; q < a.phi.size(); ++q)
        gap = std::min(gap, std::abs(std::sin((a.phi[p] - a.phi[q]) / 2.0)));
    if (gap > 0.05) break;
  }
  a.theta.clear();
  a.t.clear();
  for (int j = 0; j < k; ++j) {
    a.theta.push_back(angle(rng));
    a.t.push_back(line(rng));
  }
  return a;
}

std::vector<cplx> power_values(const Signature& sig, int degree) {
  std::vector<cplx> v = sig.values();
  for (auto& x : v) x = std::pow(x, degree);
  return v;
}

}  // namespace

RatioStats ratio_stats(const std::vector<cplx>& lhs, const std::vector<cplx>& rhs) {
  if (lhs.size() != rhs.size()) throw std::invalid_argument("ratio_stats: size mismatch");
  std::vector<cplx> ratios;
  for (std::size_t i = 0; i < lhs.size(); ++i)
    if (std::abs(rhs[i]) > 0.0) ratios.push_back(lhs[i] / rhs[i]);
  RatioStats s;
  s.count = ratios.size();
  if (ratios.empty()) return s;
  for (const auto& q : ratios) s.mean += q;
  s.mean /= static_cast<double>(ratios.size());
  for (const auto& q : ratios) s.spread = std::max(s.spread, std::abs(q - s.mean) / std::max(std::abs(s.mean), 1e-300));
  return s;
}

Json to_json(const Report& r, bool include_wall_time) {
  Json j;
  j["suite"] = r.suite;
  j["params"] = r.params;
  j["lhs"] = complex_list(r.lhs);
  j["rhs"] = complex_list(r.rhs);
  if (r.ratio)
    j["ratio_stats"] = {{"mean", to_json(r.ratio->mean)}, {"spread", r.ratio->spread}, {"count", r.ratio->count}};
  else
    j["ratio_stats"] = nullptr;
  j["truncation"] = r.truncation;
  j["measured"] = r.measured;
  j["tolerance"] = r.tolerance;
  j["max_error"] = r.max_error;
  j["pass"] = r.pass;
  j["failures"] = r.failures;
  j["seed"] = r.seed;
  if (include_wall_time) j["wall_time"] = r.wall_time;
  return j;
}

Json to_json(const Truncation& t) {
  return {{"c_max", t.c_max}, {"m_max", t.m_max}, {"lambda_max", t.lambda_max}, {"tail_terms", t.tail_terms}};
}

// ---------------------------------------------------------------- matchings

Report verify_matchings(int p_max, const std::function<int(const Matching&)>& parity_fn) {
  if (p_max < 1 || p_max > 12) throw std::invalid_argument("verify_matchings: p_max must lie in 1..12");
  Report r;
  Stopwatch watch(r.wall_time);
  r.suite = "matchings";
  r.params = {{"p_max", p_max}};
  constexpr int exhaustive_limit = 8;
  constexpr int sampled_perms = 20000;
  r.truncation = {{"sigma_exhaustive_up_to", std::min(p_max, exhaustive_limit)}, {"sigma_samples_beyond", sampled_perms}};
  long long checks = 0;
  std::mt19937_64 rng(0x5eedULL);

  for (int p = 1; p <= p_max; ++p) {
    const auto all = enumerate_matchings(p);
    if (static_cast<long long>(all.size()) != matching_count(p))
      note_failure(r, "p=" + std::to_string(p) + ": enumeration size differs from the closed form");
    long long sum = 0;
    for (const auto& z : all) sum += parity_fn(z);
    ++checks;
    if (sum != 1) note_failure(r, "parity_sum(" + std::to_string(p) + ") = " + std::to_string(sum));

    if (p % 2 == 0) {
      const Matching z0 = standard_matching(p);
      for (const auto& z : all) {
        const Matching j = involution_J(z);
        ++checks;
        if (involution_J(j) != z) note_failure(r, "J is not an involution at p=" + std::to_string(p));
        if (z == z0) {
          if (j != z0) note_failure(r, "J does not fix the standard matching at p=" + std::to_string(p));
        } else if (j == z) {
          note_failure(r, "J has an extra fixed point at p=" + std::to_string(p));
        } else if (parity_fn(j) != -parity_fn(z)) {
          note_failure(r, "J does not flip parity at p=" + std::to_string(p));
        }
      }
    }

    const Matching z0 = standard_matching(p);
    auto check_sigma = [&](const Permutation& sigma) {
      ++checks;
      if (sigma_zeta0_sign(sigma) != parity_fn(act(sigma, z0)))
        note_failure(r, "sigma_zeta0_sign disagrees with parity at sigma=" + describe(sigma));
    };
    Permutation sigma(static_cast<std::size_t>(p));
    std::iota(sigma.begin(), sigma.end(), 1);
    if (p <= exhaustive_limit) {
      do check_sigma(sigma);
      while (std::next_permutation(sigma.begin(), sigma.end()));
    } else {
      for (int s = 0; s < sampled_perms; ++s) {
        std::shuffle(sigma.begin(), sigma.end(), rng);
        check_sigma(sigma);
      }
    }
  }
  r.measured = {{"checks", checks}};
  r.max_error = static_cast<double>(r.failures.size());
  r.pass = r.failures.empty();
  return r;
}

// ------------------------------------------------------------ pairing lemma

std::vector<std::vector<int>> pairing_lemma_vectors(int p, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed + 1000ULL * static_cast<std::uint64_t>(p));
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> out;
  std::vector<int> first(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) first[static_cast<std::size_t>(i)] = p - 1 - i;  // (p-1, ..., 0)
  seen.insert(first);
  out.push_back(first);
  std::vector<int> pool(25);
  std::iota(pool.begin(), pool.end(), -12);
  while (static_cast<int>(out.size()) < count) {
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<int> a(pool.begin(), pool.begin() + p);
    std::sort(a.rbegin(), a.rend());
    if (seen.insert(a).second) out.push_back(a);
  }
  return out;
}

Report verify_pairing_lemma(int m, bool odd, const std::vector<std::vector<int>>& a_list) {
  const int p = 2 * m + (odd ? 1 : 0);
  if (m < 0 || p < 1) throw std::invalid_argument("verify_pairing_lemma: need p = 2m or 2m+1 >= 1");
  Report r;
  Stopwatch watch(r.wall_time);
  r.suite = "pairing-lemma";
  r.params = {{"m", m}, {"odd", odd}, {"p", p}, {"vectors", a_list}};

  std::vector<std::string> names;
  for (int i = 1; i <= p; ++i) names.push_back("phi" + std::to_string(i));
  const Domain dom(names, {});
  DistTerm term;
  for (int l = 0; l < m; ++l) {
    term.cots.push_back(2 * l);
    term.deltas.push_back(LinearForm::angle_sum(static_cast<std::size_t>(p), {{2 * l, 1}, {2 * l + 1, 1}}));
  }
  if (odd) term.deltas.push_back(LinearForm::angle_sum(static_cast<std::size_t>(p), {{p - 1, 1}}));
  const Distribution dist(dom, {term});
  const cplx i_power = std::pow(kI, m);
  const double printed = std::pow(2.0 * kPi, 2 * m + (odd ? 1 : 0)) * std::pow(2.0, m) * static_cast<double>(factorial(m));

  for (const auto& a : a_list) {
    if (static_cast<int>(a.size()) != p) throw std::invalid_argument("verify_pairing_lemma: vector length differs from p");
    for (std::size_t i = 1; i < a.size(); ++i)
      if (a[i - 1] <= a[i]) throw std::invalid_argument("verify_pairing_lemma: a must be strictly decreasing");
    r.lhs.push_back(i_power * pair(dist, antisymmetric_exponential(dom, a)));
    r.rhs.push_back(printed);
  }
  r.ratio = ratio_stats(r.lhs, r.rhs);
  for (const auto& v : r.lhs)
    if (v != r.lhs.front()) note_failure(r, "pairing value depends on a");
  if (!r.lhs.empty())
    r.measured = {{"value", to_json(r.lhs.front())}, {"printed", printed}, {"ratio_to_printed", to_json(r.lhs.front() / printed)}};
  r.max_error = r.ratio->spread;
  r.tolerance = 0.0;
  r.pass = r.failures.empty() && a_list.size() >= 1;
  return r;
}

// ----------------------------------------------------------------- theorem 2

Report verify_theorem2(int p, int a_bound, Regularization reg, double tolerance) {
  if (p < 1 || p > 3) throw std::invalid_argument("verify_theorem2: p must lie in 1..3");
  const int box = p == 1 ? 10 : 6;
  if (a_bound < box) throw std::invalid_argument("verify_theorem2: a_bound must cover the test box");
  Report r;
  Stopwatch watch(r.wall_time);
  r.suite = "theorem2";
  const char* reg_name = reg == Regularization::abel ? "abel" : reg == Regularization::cesaro ? "cesaro" : "sharp";
  r.params = {{"p", p}, {"box", box}};
  r.truncation = {{"a_bound", a_bound}, {"regularization", reg_name}, {"q", 0.999}, {"richardson_levels", 3}};
  r.tolerance = tolerance;
  const Distribution lambda = build_lambda(p);
  const LcalPartial lcal(p, a_bound, reg);

  std::vector<int> a(static_cast<std::size_t>(p), box);
  std::vector<std::vector<int>> decreasing;
  std::function<void(std::size_t, int)> fill = [&](std::size_t i, int upper) {
    if (i == a.size()) {
      decreasing.push_back(a);
      return;
    }
    for (int v = upper; v >= -box; --v) {
      a[i] = v;
      fill(i + 1, v - 1);
    }
  };
  fill(0, box);
  for (const auto& v : decreasing) {
    r.lhs.push_back(fourier_coefficient(lambda, v));
    r.rhs.push_back(lcal.pair_exponential(v));
  }
  r.ratio = ratio_stats(r.lhs, r.rhs);
  const cplx rho = r.ratio->mean;

  // transposed indices flip both sides
  for (std::size_t idx = 0; idx < decreasing.size() && p >= 2; idx += 7) {
    auto v = decreasing[idx];
    std::swap(v[0], v[1]);
    const cplx l = fourier_coefficient(lambda, v), q = lcal.pair_exponential(v);
    if (l != -r.lhs[idx]) note_failure(r, "Λ pairing not antisymmetric at " + describe(v));
    if (std::abs(l - rho * q) > tolerance * std::abs(l)) note_failure(r, "ratio changes under transposition at " + describe(v));
  }
  // repeated entries: both sides vanish
  int vanishing = 0;
  if (p >= 2) {
    for (int v = -box; v <= box && vanishing < 13; v += 1) {
      std::vector<int> w(static_cast<std::size_t>(p), v);
      if (p == 3) w[2] = (v == box) ? -box : v + 1;
      const cplx l = fourier_coefficient(lambda, w), q = lcal.pair_exponential(w);
      ++vanishing;
      if (std::abs(l) > 1e-12 || std::abs(q) > 1e-12) note_failure(r, "nonvanishing coefficient at " + describe(w));
    }
  }
  r.measured = {{"rho", to_json(rho)},
                {"printed", 1.0},
                {"indices", decreasing.size()},
                {"vanishing_checks", vanishing},
                {"candidate_rho", std::pow(-1.0, p / 2)}};
  r.max_error = r.ratio->spread;
  if (r.ratio->count < 20) note_failure(r, "fewer than 20 multi-indices");
  if (r.ratio->spread >= tolerance) note_failure(r, "ratio spread above tolerance");
  r.pass = r.failures.empty();
  return r;
}

// ---------------------------------------------------------------------- swap

Report verify_swap(int n, int sig_samples, int point_samples, std::uint64_t seed, double tolerance) {
  if (n < 1 || n > 4) throw std::invalid_argument("verify_swap: n must lie in 1..4");
  if (sig_samples < 1 || point_samples < 1) throw std::invalid_argument("verify_swap: sample counts must be positive");
  Report r;
  Stopwatch watch(r.wall_time);
  r.suite = "swap";
  r.params = {{"n", n}, {"sig_samples", sig_samples}, {"point_samples", point_samples}};
  r.tolerance = tolerance;
  r.seed = seed;

  struct Variant {
    const char* name;
    KappaSign sign;
    double max_error = 0.0;
  };
  std::array<Variant, 2> variants{{{"unsigned_kappa", KappaSign::unsigned_kappa}, {"signed_both", KappaSign::signed_both}}};

  for (int k = 0; 2 * k <= n; ++k) {
    std::mt19937_64 rng(seed * 7919ULL + static_cast<std::uint64_t>(n * 10 + k));
    std::vector<Signature> sigs;
    for (int s = 0; s < sig_samples; ++s) sigs.push_back(random_signature(rng, n, k + s % (n / 2 - k + 1)));
    for (int s = 0; s < point_samples; ++s) {
      const Signature& sig = sigs[static_cast<std::size_t>(s % sig_samples)];
      const CartanPoint a = random_point(rng, n, k);
      const auto angles = a.angles();
      const cplx delta = delta_cl(sig);
      for (auto& v : variants) {
        const KappaOptions opt{v.sign, XiVariant::line};
        const ExpPoly kappa = kappa_local(n, k, sig, a, false, opt);
        const ExpPoly kappa_p = kappa_local(n, k, sig, a, true, opt);
        const ExpPoly d_kappa = apply_diff_vandermonde(kappa), d_kappa_p = apply_diff_vandermonde(kappa_p);
        const cplx lhs1 = d_kappa.evaluate(angles, a.t), rhs1 = delta * kappa_p.evaluate(angles, a.t);
        const cplx lhs2 = d_kappa_p.evaluate(angles, a.t), rhs2 = delta * kappa.evaluate(angles, a.t);
        const double scale1 = std::max({d_kappa.magnitude(angles, a.t), std::abs(delta) * kappa_p.magnitude(angles, a.t), 1e-300});
        const double scale2 = std::max({d_kappa_p.magnitude(angles, a.t), std::abs(delta) * kappa.magnitude(angles, a.t), 1e-300});
        v.max_error = std::max({v.max_error, std::abs(lhs1 - rhs1) / scale1, std::abs(lhs2 - rhs2) / scale2});
        if (v.sign == KappaSign::unsigned_kappa) {
          r.lhs.push_back(lhs1);
          r.rhs.push_back(rhs1);
        }
      }
    }
  }
  const bool unsigned_pass = variants[0].max_error < tolerance;
  const bool signed_pass = variants[1].max_error < tolerance;
  r.measured = {{"unsigned_kappa", {{"max_error", variants[0].max_error}, {"pass", unsigned_pass}}},
                {"signed_both", {{"max_error", variants[1].max_error}, {"pass", signed_pass}}},
                {"discriminates", unsigned_pass != signed_pass}};
  r.max_error = variants[0].max_error;
  if (!unsigned_pass) note_failure(r, "swap identity violated for the default κ sign");
  r.pass = r.failures.empty();
  return r;
}

// --------------------------------------------------------------------- eigen

Report verify_eigen(int n, int degree, int sig_samples, int point_samples, std::uint64_t seed, double tolerance) {
  if (n < 1 || n > 3) throw std::invalid_argument("verify_eigen: n must lie in 1..3");
  if (degree < 0 || degree > 3) throw std::invalid_argument("verify_eigen: degree must lie in 0..3");
  Report r;
  Stopwatch watch(r.wall_time);
  r.suite = "eigen";
  r.params = {{"n", n}, {"degree", degree}, {"sig_samples", sig_samples}, {"point_samples", point_samples}};
  r.tolerance = tolerance;
  r.seed = seed;
  for (int k = 0; 2 * k <= n; ++k) {
    std::mt19937_64 rng(seed * 104729ULL + static_cast<std::uint64_t>(n * 10 + k));
    std::vector<Signature> sigs;
    for (int s = 0; s < sig_samples; ++s) sigs.push_back(random_signature(rng, n, k + s % (n / 2 - k + 1)));
    for (int s = 0; s < point_samples; ++s) {
      const Signature& sig = sigs[static_cast<std::size_t>(s % sig_samples)];
      const CartanPoint a = random_point(rng, n, k);
      const auto angles = a.angles();
      for (bool primed : {false, true}) {
        const ExpPoly kappa = kappa_local(n, k, sig, a, primed);
        const cplx base = kappa.evaluate(angles, a.t);
        for (int d = 0; d <= degree; ++d) {
          const ExpPoly moved = apply_power_sum(d, kappa);
          const auto pv = power_values(sig, d);
          const cplx eigen = std::accumulate(pv.begin(), pv.end(), cplx{0.0});
          const cplx lhs = moved.evaluate(angles, a.t), rhs = eigen * base;
          const double scale = std::max({moved.magnitude(angles, a.t), std::abs(eigen) * kappa.magnitude(angles, a.t), 1e-300});
          const double err = std::abs(lhs - rhs) / scale;
          r.max_error = std::max(r.max_error, err);
          r.lhs.push_back(lhs);
          r.rhs.push_back(rhs);
          if (err >= tolerance)
            note_failure(r, "k=" + std::to_string(k) + " degree=" + std::to_string(d) + (primed ? " primed" : "") +
                                ": relative error " + std::to_string(err));
        }
      }
    }
  }
  r.pass = r.failures.empty();
  return r;
}

// ----------------------------------------------------------------------- id1

ExpPoly LineTest::as_exppoly(const Domain& domain, int theta_index, int line_index) const {
  ExpTerm term;
  term.freq.assign(domain.angle_count(), 0.0);
  term.lines.resize(domain.line_count());
  term.freq[static_cast<std::size_t>(theta_index)] = static_cast<double>(theta_freq);
  term.lines[static_cast<std::size_t>(line_index)] = LineFactor{{1.0, 0.0, quadratic}, shift, width};
  ExpPoly p(domain);
  p.add_term(std::move(term));
  return p;
}

std::vector<LineTest> id1_tests(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed * 31ULL + 5ULL);
  std::uniform_int_distribution<int> freq(-3, 3);
  std::uniform_real_distribution<double> width(0.5, 1.5), shift(-0.5, 0.5), quad(-0.4, 0.4);
  std::vector<LineTest> out;
  out.push_back({0, 1.0, 0.0, 0.0});
  out.push_back({0, 0.5, 0.0, 0.0});
  while (static_cast<int>(out.size()) < count) out.push_back({freq(rng), width(rng), shift(rng), quad(rng)});
  out.resize(static_cast<std::size_t>(count));
  return out;
}

cplx id1_lhs(const LineTest& g, const Truncation& trunc) {
  const Domain dom = cartan_domain(2, 1);
  const ExpPoly test = g.as_exppoly(dom, 0, 0);
  const Distribution lebesgue = Distribution::constant(dom);
  const CartanPoint origin{1, {}, {0.0}, {0.0}};
  cplx total{0.0};
  for (int m = -trunc.m_max; m <= trunc.m_max; ++m) {
    if (m + g.theta_freq != 0) continue;  // θ-orthogonality: every other m pairs to zero exactly
    auto integrand = [&](double lambda) {
      const Signature sig = Signature::checked(2, {}, {m}, {lambda});
      return pair(lebesgue, test * kappa_local(2, 1, sig, origin, true));
    };
    total += integrate(integrand, 0.0, trunc.lambda_max, 1e-12).value;
  }
  return total;
}

Report verify_id1(const Truncation& trunc, int test_count, std::uint64_t seed, double tolerance) {
  if (test_count < 5) throw std::invalid_argument("verify_id1: need at least 5 tests");
  Report r;
  Stopwatch watch(r.wall_time);
  r.suite = "id1";
  r.params = {{"test_count", test_count}};
  r.truncation = to_json(trunc);
  r.tolerance = tolerance;
  r.seed = seed;
  const auto tests = id1_tests(test_count, seed);
  const Domain dom = cartan_domain(2, 1);
  const std::vector<double> zero_angle{0.0}, zero_line{0.0};
  for (const auto& g : tests) {
    r.lhs.push_back(id1_lhs(g, trunc));
    r.rhs.push_back(g.as_exppoly(dom, 0, 0).evaluate(zero_angle, zero_line));
  }
  r.ratio = ratio_stats(r.lhs, r.rhs);
  const cplx c = r.ratio->mean;

  // a test vanishing at the origin must give zero
  ExpPoly vanishing(dom);
  vanishing.add_term(ExpTerm{1.0, {0.0}, {LineFactor{{0.0, 0.0, 1.0}, 0.0, 1.0}}});
  const Truncation t2 = trunc.doubled();
  cplx drifted{0.0};
  for (std::size_t i = 0; i < tests.size(); ++i) drifted += id1_lhs(tests[i], t2) / r.rhs[i];
  drifted /= static_cast<double>(tests.size());
  const cplx zero_lhs = [&] {
    const Distribution lebesgue = Distribution::constant(dom);
    const CartanPoint origin{1, {}, {0.0}, {0.0}};
    return integrate(
               [&](double lambda) {
                 return pair(lebesgue, vanishing * kappa_local(2, 1, Signature::checked(2, {}, {0}, {lambda}), origin, true));
               },
               0.0, trunc.lambda_max, 1e-12)
        .value;
  }();
  const double drift = relative_change(c, drifted);
  const double printed = -4.0 * kPi * kPi;
  r.measured = {{"constant", to_json(c)},
                {"printed", printed},
                {"ratio_to_printed", to_json(c / printed)},
                {"doubled_constant", to_json(drifted)},
                {"truncation_drift", drift},
                {"vanishing_test_lhs", to_json(zero_lhs)}};
  r.max_error = r.ratio->spread;
  if (r.ratio->spread >= tolerance) note_failure(r, "ratio spread above tolerance");
  if (drift >= tolerance) note_failure(r, "doubling the truncation moved the constant");
  if (std::abs(zero_lhs) > 1e-8) note_failure(r, "vanishing test does not give zero");
  r.pass = r.failures.empty();
  return r;
}

// ----------------------------------------------------------------------- id2

cplx d_prime_moment(int b, int m, double lambda) {
  const cplx l{m / 2.0, -lambda / 2.0};
  auto integrand = [&](double u) { return 2.0 * std::exp(kI * (2.0 * b * u)) * eval_D(l, 2.0 * u, 0.0, true); };
  return integrate(integrand, 0.0, kPi, 1e-12).value;
}

cplx d_prime_lambda_integral(int b, int m, const Truncation& trunc) {
  return integrate_algebraic_tail([&](double lambda) { return d_prime_moment(b, m, lambda); }, trunc.lambda_max,
                                  trunc.tail_terms, 1e-11)
      .total();
}

namespace {

/// Caches ∫ W(b, m, λ) dλ across the terms of one computation.
class MomentCache {
 public:
  explicit MomentCache(Truncation trunc) : trunc_(trunc) {}
  cplx get(int b, int m) {
    const auto key = std::make_pair(b, m);
    if (auto it = values_.find(key); it != values_.end()) return it->second;
    return values_[key] = d_prime_lambda_integral(b, m, trunc_);
  }

 private:
  Truncation trunc_;
  std::map<std::pair<int, int>, cplx> values_;
};

long long integer_freq(cplx f) {
  const double re = std::round(f.real());
  if (std::abs(f.imag()) > 1e-12 || std::abs(f.real() - re) > 1e-9)
    throw std::invalid_argument("test data must have integer angle frequencies");
  return static_cast<long long>(re);
}

Distribution cot_delta(const Domain& dom) {
  DistTerm t;
  t.cots = {0};
  t.deltas = {LinearForm::angle_sum(2, {{0, 1}, {1, 1}})};
  return Distribution(dom, {t});
}

}  // namespace

cplx id2_lhs(const ExpPoly& f, const Truncation& trunc) {
  if (f.domain() != cartan_domain(2, 0)) throw std::invalid_argument("id2_lhs: test must live on (phi1, phi2)");
  MomentCache cache(trunc);
  cplx total{0.0};
  for (const auto& term : f.terms()) {
    const long long b1 = integer_freq(term.freq[0]), b2 = integer_freq(term.freq[1]);
    for (int m = -trunc.m_max; m <= trunc.m_max; ++m) {
      if (m + b1 + b2 != 0) continue;  // diagonal-angle orthogonality
      total += term.coeff * 2.0 * kPi * cache.get(static_cast<int>(b1), m);
    }
  }
  return total;
}

std::vector<ExpPoly> id2_tests(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed * 131ULL + 17ULL);
  std::uniform_int_distribution<int> freq(-3, 3), terms(1, 2);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const Domain dom = cartan_domain(2, 0);
  std::vector<ExpPoly> out;
  out.push_back(ExpPoly::exponential(dom, {1.0, 0.0}) + ExpPoly::exponential(dom, {0.0, 1.0}, -1.0));
  while (static_cast<int>(out.size()) < count) {
    ExpPoly f(dom);
    const int nt = terms(rng);
    for (int t = 0; t < nt; ++t) {
      int b1 = freq(rng), b2 = freq(rng);
      while (b1 == b2) b2 = freq(rng);
      const cplx c{coef(rng), coef(rng)};
      f += ExpPoly::exponential(dom, {static_cast<double>(b1), static_cast<double>(b2)}, c);
      f += ExpPoly::exponential(dom, {static_cast<double>(b2), static_cast<double>(b1)}, -c);
    }
    out.push_back(std::move(f));
  }
  return out;
}

Report verify_id2(const Truncation& trunc, int test_count, std::uint64_t seed, double tolerance) {
  if (test_count < 2) throw std::invalid_argument("verify_id2: need at least 2 tests");
  Report r;
  Stopwatch watch(r.wall_time);
  r.suite = "id2";
  r.params = {{"test_count", test_count}};
  r.truncation = to_json(trunc);
  r.truncation["lambda_tail"] = "fitted even powers of 1/lambda on [lambda_max/2, lambda_max]";
  r.tolerance = tolerance;
  r.seed = seed;
  const Domain dom = cartan_domain(2, 0);
  const Distribution cd = cot_delta(dom);
  const auto tests = id2_tests(test_count, seed);
  for (const auto& f : tests) {
    r.lhs.push_back(id2_lhs(f, trunc));
    r.rhs.push_back(pair(cd, f));
  }
  r.ratio = ratio_stats(r.lhs, r.rhs);
  const cplx c = r.ratio->mean;
  cplx drifted{0.0};
  for (std::size_t i = 0; i < tests.size(); ++i) drifted += id2_lhs(tests[i], trunc.doubled()) / r.rhs[i];
  drifted /= static_cast<double>(tests.size());
  const double drift = relative_change(c, drifted);

  const ExpPoly symmetric = ExpPoly::exponential(dom, {2.0, -1.0}) + ExpPoly::exponential(dom, {-1.0, 2.0});
  const cplx sym_lhs = id2_lhs(symmetric, trunc), sym_rhs = pair(cd, symmetric);

  const double printed = -8.0 * kPi;
  const double lambda2_reading = 2.0 / kPi;  // 4i·Λ₂ = 4i·(-i)/(2π)·cot·δ
  r.measured = {{"constant", to_json(c)},
                {"printed_right_member", printed},
                {"ratio_to_printed", to_json(c / printed)},
                {"four_i_lambda2_reading", lambda2_reading},
                {"ratio_to_four_i_lambda2", to_json(c / lambda2_reading)},
                {"doubled_constant", to_json(drifted)},
                {"truncation_drift", drift},
                {"symmetric_test", {{"lhs", to_json(sym_lhs)}, {"rhs", to_json(sym_rhs)}}}};
  r.max_error = r.ratio->spread;
  if (r.ratio->spread >= tolerance) note_failure(r, "ratio spread above tolerance");
  if (drift >= tolerance) note_failure(r, "doubling the truncation moved the constant");
  if (std::abs(sym_lhs) > 1e-8 || std::abs(sym_rhs) > 1e-12) note_failure(r, "symmetric test does not vanish");
  r.pass = r.failures.empty();
  return r;
}

// ----------------------------------------------------------- summation lemma

namespace {

bool summation_triple_supported(int n, int r, int k) {
  return r == 1 && (n == 2 || n == 3) && (k == 0 || k == 1);
}

/// All strictly decreasing c with |c_j| ≤ c_max.
std::vector<std::vector<int>> decreasing_lattice(int length, int c_max) {
  std::vector<std::vector<int>> out;
  std::vector<int> c(static_cast<std::size_t>(length));
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int upper) {
    if (i == c.size()) {
      out.push_back(c);
      return;
    }
    for (int v = upper; v >= -c_max; --v) {
      c[i] = v;
      rec(i + 1, v - 1);
    }
  };
  rec(0, c_max);
  return out;
}

/// -∫_0^Λ (Ĝ(λ) + Ĝ(-λ)) dλ for the line factor G, i.e. the t-part of ξ' integrated in λ.
cplx xi_prime_line_integral(const LineFactor& g, double lambda_max) {
  auto integrand = [&](double lambda) {
    LineFactor plus = g, minus = g;
    plus.rate += kI * lambda;
    minus.rate -= kI * lambda;
    return -(plus.integral() + minus.integral());
  };
  return integrate(integrand, 0.0, lambda_max, 1e-12).value;
}

}  // namespace

std::vector<ExpPoly> summation_tests(int n, int k, int count, std::uint64_t seed) {
  const Domain dom = cartan_domain(n, k);
  std::vector<ExpPoly> out;
  if (k == 1) {
    std::mt19937_64 rng(seed * 977ULL + static_cast<std::uint64_t>(n));
    std::uniform_int_distribution<int> freq(-3, 3);
    const auto lines = id1_tests(count, seed);
    const int white = n - 2;
    for (const auto& g : lines) {
      ExpPoly h = g.as_exppoly(dom, white, 0);
      if (white == 1) {
        // white angle frequency: the δ(φ) pairing is independent of it
        const int b = n == 2 ? 0 : freq(rng);
        h = h * ExpPoly::exponential(dom, {static_cast<double>(b), 0.0});
      }
      out.push_back((h + h.reflect_line(0)) * 0.5);
    }
    return out;
  }
  std::mt19937_64 rng(seed * 613ULL + static_cast<std::uint64_t>(n));
  std::uniform_int_distribution<int> freq(-3, 3), terms(1, 2);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  while (static_cast<int>(out.size()) < count) {
    ExpPoly h(dom);
    const int nt = terms(rng);
    for (int t = 0; t < nt; ++t) {
      std::vector<int> b(static_cast<std::size_t>(n));
      for (auto& x : b) x = freq(rng);
      h += antisymmetric_exponential(dom, b) * cplx{coef(rng), coef(rng)};
    }
    if (std::abs(summation_rhs(n, k, h)) < 1e-6) continue;
    out.push_back(std::move(h));
  }
  return out;
}

void check_summation_symmetry(int n, int k, const ExpPoly& h) {
  if (h.domain() != cartan_domain(n, k)) throw std::invalid_argument("summation data lives on the wrong chart");
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> angle(-kPi, kPi), line(-1.0, 1.0);
  const int white = n - 2 * k;
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<double> ang(h.domain().angle_count()), lin(h.domain().line_count());
    for (auto& x : ang) x = angle(rng);
    for (auto& x : lin) x = line(rng);
    const cplx base = h.evaluate(ang, lin);
    const double scale = std::max(h.magnitude(ang, lin), 1e-300);
    for (int p = 0; p < white; ++p)
      for (int q = p + 1; q < white; ++q) {
        auto swapped = ang;
        std::swap(swapped[static_cast<std::size_t>(p)], swapped[static_cast<std::size_t>(q)]);
        if (std::abs(h.evaluate(swapped, lin) + base) > 1e-9 * scale)
          throw std::invalid_argument("summation data is not skew-symmetric in the angles");
      }
    for (std::size_t j = 0; j < lin.size(); ++j) {
      auto reflected = lin;
      reflected[j] = -reflected[j];
      if (std::abs(h.evaluate(ang, reflected) - base) > 1e-9 * scale)
        throw std::invalid_argument("summation data is not even in the line coordinates");
    }
  }
}

cplx summation_lhs(int n, int r, int k, const ExpPoly& h, const Truncation& trunc, int workers) {
  if (!summation_triple_supported(n, r, k)) throw std::invalid_argument("summation lemma: unsupported (n, r, k)");
  check_summation_symmetry(n, k, h);
  const auto diagrams = enumerate_diagrams(n, r, k);
  const auto lattice = decreasing_lattice(n - 2 * r, trunc.c_max);
  const int white = n - 2 * k;

  // λ-integrals per h-term: pair arcs need W(b_lo, m), block arcs the Gaussian transform
  std::vector<cplx> block_integral(h.terms().size(), 0.0);
  if (k == 1)
    for (std::size_t i = 0; i < h.terms().size(); ++i)
      block_integral[i] = xi_prime_line_integral(h.terms()[i].lines[0], trunc.lambda_max);
  std::set<std::pair<int, int>> needed;
  if (k == 0)
    for (const auto& term : h.terms())
      for (const auto& d : diagrams)
        for (const auto& arc : d.pair_arcs()) {
          const long long b_lo = integer_freq(term.freq[static_cast<std::size_t>(arc.lo - 1)]);
          const long long b_hi = integer_freq(term.freq[static_cast<std::size_t>(arc.hi - 1)]);
          if (std::abs(b_lo + b_hi) <= trunc.m_max) needed.emplace(static_cast<int>(b_lo), static_cast<int>(-(b_lo + b_hi)));
        }
  const std::vector<std::pair<int, int>> keys(needed.begin(), needed.end());
  const auto moments = parallel_map<cplx>(keys.size(), workers,
                                          [&](std::size_t i) { return d_prime_lambda_integral(keys[i].first, keys[i].second, trunc); });
  std::map<std::pair<int, int>, cplx> moment;
  for (std::size_t i = 0; i < keys.size(); ++i) moment[keys[i]] = moments[i];

  const double two_pi = 2.0 * kPi;
  cplx total{0.0};
  for (const auto& c : lattice)
    for (int m = -trunc.m_max; m <= trunc.m_max; ++m)
      for (const auto& d : diagrams)
        for (std::size_t ti = 0; ti < h.terms().size(); ++ti) {
          const auto& term = h.terms()[ti];
          auto b = [&](int box) { return integer_freq(term.freq[static_cast<std::size_t>(box - 1)]); };
          cplx v = term.coeff * static_cast<double>(diagram_sign(d));
          for (const auto& arc : d.circle_arcs())
            if (c[static_cast<std::size_t>(arc.circle - 1)] + b(arc.box) != 0) v = 0.0;
            else v *= two_pi;
          if (v == cplx{0.0}) continue;
          for (const auto& arc : d.pair_arcs()) {
            if (m + b(arc.lo) + b(arc.hi) != 0) v = 0.0;
            else v *= two_pi * moment.at({static_cast<int>(b(arc.lo)), m});
          }
          for (const auto& arc : d.block_arcs()) {
            if (m + b(white + arc.z) != 0) v = 0.0;
            else v *= two_pi * block_integral[ti];
          }
          total += v;
        }
  return total;
}

cplx summation_rhs(int n, int k, const ExpPoly& h) { return pair(build_theta(n, k).charts.back().distribution, h); }

Report verify_summation_lemma(int n, int r, int k, const Truncation& trunc, int test_count, std::uint64_t seed,
                              int workers, double tolerance) {
  if (!summation_triple_supported(n, r, k)) throw std::invalid_argument("summation lemma: unsupported (n, r, k)");
  if (test_count < 2) throw std::invalid_argument("summation lemma: need at least 2 tests");
  Report rep;
  Stopwatch watch(rep.wall_time);
  rep.suite = "summation";
  rep.params = {{"n", n}, {"r", r}, {"k", k}, {"test_count", test_count}};
  rep.truncation = to_json(trunc);
  rep.tolerance = tolerance;
  rep.seed = seed;
  const auto tests = summation_tests(n, k, test_count, seed);
  for (const auto& h : tests) {
    rep.lhs.push_back(summation_lhs(n, r, k, h, trunc, workers));
    rep.rhs.push_back(summation_rhs(n, k, h));
  }
  rep.ratio = ratio_stats(rep.lhs, rep.rhs);
  const cplx c = rep.ratio->mean;
  cplx drifted{0.0};
  for (std::size_t i = 0; i < tests.size(); ++i) drifted += summation_lhs(n, r, k, tests[i], trunc.doubled(), workers) / rep.rhs[i];
  drifted /= static_cast<double>(tests.size());
  const double drift = relative_change(c, drifted);
  const cplx zero = summation_lhs(n, r, k, ExpPoly(cartan_domain(n, k)), trunc, workers);

  const cplx printed = std::pow(2.0 * kPi, n) * std::pow(-2.0, r - k) * std::pow(-kI, n / 2 - r);
  rep.measured = {{"constant", to_json(c)},
                  {"printed", to_json(printed)},
                  {"ratio_to_printed", to_json(c / printed)},
                  {"doubled_constant", to_json(drifted)},
                  {"truncation_drift", drift},
                  {"zero_data_lhs", to_json(zero)}};
  rep.max_error = rep.ratio->spread;
  if (rep.ratio->spread >= tolerance) note_failure(rep, "ratio spread above tolerance");
  if (drift >= tolerance) note_failure(rep, "doubling the truncation moved the constant");
  if (zero != cplx{0.0}) note_failure(rep, "zero data gives a nonzero sum");
  rep.pass = rep.failures.empty();
  return rep;
}

// ------------------------------------------------------------------ D kernel

Report verify_d_kernel(std::uint64_t seed) {
  Report r;
  Stopwatch watch(r.wall_time);
  r.suite = "d-kernel";
  r.seed = seed;
  constexpr double alt_tol = 1e-10, jump_tol = 1e-6, eta = 1e-9;
  r.tolerance = alt_tol;
  const std::vector<double> lambdas{0.3, 1.0, 2.5};
  r.params = {{"grid", "10x10"}, {"m", {-2, -1, 0, 1, 2}}, {"lambda", lambdas}, {"eta", eta}};

  double alt_err = 0.0;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      const double p1 = -kPi + (i + 0.37) * 2.0 * kPi / 10.0, p2 = -kPi + (j + 0.81) * 2.0 * kPi / 10.0;
      for (int m = -2; m <= 2; ++m)
        for (double lam : lambdas)
          for (bool primed : {false, true}) {
            const cplx l{m / 2.0, -lam / 2.0};
            const cplx a = eval_D(l, p1, p2, primed), b = eval_D_alt(l, p1, p2, primed);
            alt_err = std::max(alt_err, std::abs(a - b) / std::max(1.0, std::abs(a)));
          }
    }

  std::mt19937_64 rng(seed * 65537ULL + 3ULL);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  double jump = 0.0;
  for (int s = 0; s < 50; ++s) {
    const double phi = angle(rng);
    const double shift = (s % 5 == 0) ? 2.0 * kPi : 0.0;  // diagonal met across the wrap
    for (int m = -3; m <= 3; ++m)
      for (double lam : lambdas) {
        const cplx l{m / 2.0, -lam / 2.0};
        const cplx above = eval_D(l, phi + shift + eta, phi, false);
        const cplx below = eval_D(l, phi + shift - eta, phi, false);
        jump = std::max(jump, std::abs(above - below));
      }
  }
  r.measured = {{"alt_max_error", alt_err}, {"continuity_max_jump", jump}};
  r.max_error = alt_err;
  if (alt_err >= alt_tol) note_failure(r, "piecewise and two-exponential forms disagree");
  if (jump >= jump_tol) note_failure(r, "D jumps across the diagonal");
  r.pass = r.failures.empty();
  return r;
}

// ------------------------------------------------------------------- glueing

namespace {

struct GluePair {
  ExpPoly lower;
  ExpPoly upper;
  CartanPoint base;
};

/// Upper data P·(e^{ωt} ± e^{-ωt}) and its matched lower partner 2iP·cos(ω(φ_a - φ_b)).
GluePair matched_pair(int n, int k, std::mt19937_64& rng) {
  const Domain lo = cartan_domain(n, k), up = cartan_domain(n, k + 1);
  const int white_up = n - 2 * (k + 1);
  std::uniform_int_distribution<int> freq(-3, 3);
  std::uniform_real_distribution<double> unit(-1.0, 1.0), angle(-kPi, kPi);
  ExpPoly lower(lo), upper(up);
  for (int term = 0; term < 3; ++term) {
    const cplx c{unit(rng), unit(rng)};
    const cplx omega{unit(rng) * 1.5, unit(rng) * 0.5};
    const int j = freq(rng);
    std::vector<int> q(static_cast<std::size_t>(white_up + k));
    for (auto& x : q) x = freq(rng);
    std::vector<LineFactor> others(static_cast<std::size_t>(k));
    for (auto& f : others) f.rate = unit(rng) * 0.3;
    const bool odd_extra = term == 2;

    for (int s : {1, -1}) {
      ExpTerm t;
      t.freq.assign(up.angle_count(), 0.0);
      for (int i = 0; i < white_up; ++i) t.freq[static_cast<std::size_t>(i)] = q[static_cast<std::size_t>(i)];
      for (int b = 0; b < k; ++b) t.freq[static_cast<std::size_t>(white_up + b)] = q[static_cast<std::size_t>(white_up + b)];
      t.freq[static_cast<std::size_t>(white_up + k)] = static_cast<double>(j);
      t.lines = others;
      t.lines.push_back(LineFactor{{1.0}, static_cast<double>(s) * omega, 0.0});
      t.coeff = odd_extra ? c * static_cast<double>(s) : c;
      upper.add_term(t);
      if (odd_extra) continue;  // odd parts leave the lower chart untouched

      ExpTerm w;
      w.freq.assign(lo.angle_count(), 0.0);
      for (int i = 0; i < white_up; ++i) w.freq[static_cast<std::size_t>(i)] = q[static_cast<std::size_t>(i)];
      w.freq[static_cast<std::size_t>(white_up)] = j / 2.0 + static_cast<double>(s) * omega;
      w.freq[static_cast<std::size_t>(white_up + 1)] = j / 2.0 - static_cast<double>(s) * omega;
      for (int b = 0; b < k; ++b)
        w.freq[static_cast<std::size_t>(white_up + 2 + b)] = q[static_cast<std::size_t>(white_up + b)];
      w.lines = others;
      w.coeff = kI * c;
      lower.add_term(w);
    }
  }
  CartanPoint base;
  base.k = k + 1;
  for (int i = 0; i < white_up; ++i) base.phi.push_back(angle(rng));
  for (int b = 0; b <= k; ++b) {
    base.theta.push_back(angle(rng));
    base.t.push_back(unit(rng));
  }
  return {lower, upper, base};
}

}  // namespace

Report verify_glueing(std::uint64_t seed) {
  Report r;
  Stopwatch watch(r.wall_time);
  r.suite = "glueing";
  r.seed = seed;
  constexpr int order = 6;
  constexpr double zero_tol = 1e-12, report_tol = 1e-10;
  r.tolerance = report_tol;
  const std::vector<std::pair<int, int>> charts{{2, 0}, {3, 0}, {4, 0}, {4, 1}};
  r.params = {{"order", order}, {"charts", charts}, {"pairs_per_chart", 5}};
  std::mt19937_64 rng(seed * 2654435761ULL + 11ULL);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double matched = 0.0, perturbation_err = 0.0;
  for (const auto& [n, k] : charts)
    for (int s = 0; s < 5; ++s) {
      const GluePair g = matched_pair(n, k, rng);
      const auto clean = check_glueing(g.lower, g.upper, g.base, order);
      matched = std::max(matched, clean.max_residual());

      const cplx delta{1e-3 * unit(rng), 1e-3 * unit(rng)};
      const auto lower_bad = check_glueing(g.lower + ExpPoly::constant(g.lower.domain(), delta), g.upper, g.base, order);
      perturbation_err = std::max(perturbation_err, std::abs(lower_bad.max_residual() - std::abs(delta)));
      const ExpPoly minus = g.upper.reflect_line(static_cast<std::size_t>(k)) * -1.0;
      const auto upper_bad =
          check_glueing(g.lower, g.upper, minus + ExpPoly::constant(g.upper.domain(), delta), g.base, order);
      perturbation_err = std::max(perturbation_err, std::abs(upper_bad.max_residual() - std::abs(delta)));
      r.lhs.push_back(lower_bad.lower_residuals.front());
      r.rhs.push_back(delta);
    }
  r.measured = {{"matched_max_residual", matched}, {"perturbation_report_error", perturbation_err}};
  r.max_error = std::max(matched, perturbation_err);
  if (matched >= zero_tol) note_failure(r, "matched pairs leave a residual");
  if (perturbation_err >= report_tol) note_failure(r, "injected perturbation not reported faithfully");
  r.pass = r.failures.empty();
  return r;
}

// -------------------------------------------------------------------- runner

bool SuiteResult::pass() const {
  return !cases.empty() && std::all_of(cases.begin(), cases.end(), [](const Report& r) { return r.pass; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"matchings", "pairing-lemma", "theorem2", "swap", "eigen",
                                              "id1",       "id2",           "summation", "d-kernel", "glueing"};
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg) {
  SuiteResult out{name, {}};
  auto tol_or = [&](double fallback) { return cfg.tol.value_or(fallback); };
  if (name == "matchings") {
    out.cases.push_back(verify_matchings(cfg.p_max));
  } else if (name == "pairing-lemma") {
    std::vector<int> ps;
    if (cfg.p) ps = {*cfg.p};
    else for (int p = 1; p <= 7; ++p) ps.push_back(p);
    for (int p : ps) {
      auto rep = verify_pairing_lemma(p / 2, p % 2 == 1, pairing_lemma_vectors(p, 12, cfg.seed));
      rep.seed = cfg.seed;
      out.cases.push_back(std::move(rep));
    }
  } else if (name == "theorem2") {
    std::vector<int> ps = cfg.p ? std::vector<int>{*cfg.p} : std::vector<int>{1, 2, 3};
    for (int p : ps) out.cases.push_back(verify_theorem2(p, cfg.a_bound, cfg.reg, tol_or(1e-3)));
  } else if (name == "swap") {
    std::vector<int> ns = cfg.n ? std::vector<int>{*cfg.n} : std::vector<int>{1, 2, 3, 4};
    for (int n : ns) out.cases.push_back(verify_swap(n, 10, 100, cfg.seed, tol_or(1e-8)));
  } else if (name == "eigen") {
    std::vector<int> ns = cfg.n ? std::vector<int>{*cfg.n} : std::vector<int>{1, 2, 3};
    for (int n : ns) out.cases.push_back(verify_eigen(n, 3, 5, 20, cfg.seed, tol_or(1e-8)));
  } else if (name == "id1") {
    out.cases.push_back(verify_id1(cfg.trunc, 6, cfg.seed, tol_or(1e-3)));
  } else if (name == "id2") {
    out.cases.push_back(verify_id2(cfg.trunc, 6, cfg.seed, tol_or(1e-2)));
  } else if (name == "summation") {
    std::vector<std::array<int, 3>> triples{{2, 1, 0}, {2, 1, 1}, {3, 1, 0}, {3, 1, 1}};
    if (cfg.n || cfg.r || cfg.k) {
      if (!(cfg.n && cfg.r && cfg.k)) throw std::invalid_argument("summation: give all of --n, --r, --k or none");
      triples = {{*cfg.n, *cfg.r, *cfg.k}};
    }
    for (const auto& [n, r, k] : triples)
      out.cases.push_back(verify_summation_lemma(n, r, k, cfg.trunc, 6, cfg.seed, cfg.workers, tol_or(1e-2)));
  } else if (name == "d-kernel") {
    out.cases.push_back(verify_d_kernel(cfg.seed));
  } else if (name == "glueing") {
    out.cases.push_back(verify_glueing(cfg.seed));
  } else {
    throw std::invalid_argument("unknown suite '" + name + "'");
  }
  return out;
}

Json to_json(const SuiteResult& s, bool include_wall_time) {
  Json cases = Json::array();
  for (const auto& c : s.cases) cases.push_back(to_json(c, include_wall_time));
  return {{"suite", s.name}, {"pass", s.pass()}, {"cases", cases}};
}

}  // namespace specsep
