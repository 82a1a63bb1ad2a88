#include "specsep/projectors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "specsep/matchings.hpp"
#include "specsep/quadrature.hpp"

namespace specsep {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

cplx minus_i_power(int m) {
  static constexpr std::array<cplx, 4> powers{cplx{1, 0}, cplx{0, -1}, cplx{-1, 0}, cplx{0, 1}};
  return powers[static_cast<std::size_t>(m % 4)];
}

Domain lambda_domain(int p, const std::string& prefix = "phi") {
  std::vector<std::string> names;
  for (int i = 1; i <= p; ++i) names.push_back(prefix + std::to_string(i));
  return Domain(names, {});
}

/// cot(φ_lo/2)·δ(φ_lo + φ_hi) for 1-based indices.
void add_pair(DistTerm& term, int p, int cot_index, int other) {
  term.cots.push_back(cot_index - 1);
  term.deltas.push_back(LinearForm::angle_sum(static_cast<std::size_t>(p), {{cot_index - 1, 1}, {other - 1, 1}}));
}

void add_singleton(DistTerm& term, int p, int index) {
  term.deltas.push_back(LinearForm::angle_sum(static_cast<std::size_t>(p), {{index - 1, 1}}));
}

/// Sign of the permutation sorting c into decreasing order; 0 on repeated entries.
int sorting_sign(std::vector<int> c) {
  int sign = 1;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      if (c[i] == c[j]) return 0;
      if (c[i] < c[j]) sign = -sign;
    }
  return sign;
}

}  // namespace

Rational gamma_k(int n, int k) {
  if (n < 0 || k < 0 || 2 * k > n) throw std::out_of_range("gamma_k: need 0 <= k <= n/2");
  return Rational(1, factorial(k) * factorial(n - 2 * k) * (1LL << k));
}

Distribution build_lambda(int p) {
  if (p < 0) throw std::invalid_argument("build_lambda: p must be non-negative");
  const Domain dom = lambda_domain(p);
  if (p == 0) return Distribution::constant(dom, 1.0);
  const int m = p / 2;
  const cplx scale = minus_i_power(m) / std::pow(kTwoPi, m);
  Distribution d(dom);
  for (const auto& zeta : enumerate_matchings(p)) {
    DistTerm term;
    term.coeff = scale * static_cast<double>(parity(zeta));
    for (const auto& [hi, lo] : zeta.pairs()) add_pair(term, p, lo, hi);
    if (zeta.singleton()) add_singleton(term, p, *zeta.singleton());
    d.add_term(std::move(term));
  }
  return d;
}

Distribution build_lambda_sigma_sum(int p) {
  if (p < 0) throw std::invalid_argument("build_lambda_sigma_sum: p must be non-negative");
  const Domain dom = lambda_domain(p);
  if (p == 0) return Distribution::constant(dom, 1.0);
  const int m = p / 2;
  const cplx scale =
      minus_i_power(m) / (std::pow(kTwoPi, m) * std::pow(2.0, m) * static_cast<double>(factorial(m)));
  Distribution d(dom);
  Permutation sigma(static_cast<std::size_t>(p));
  std::iota(sigma.begin(), sigma.end(), 1);
  do {
    DistTerm term;
    term.coeff = scale * static_cast<double>(permutation_sign(sigma));
    for (int j = 0; j < m; ++j)
      add_pair(term, p, sigma[static_cast<std::size_t>(2 * j)], sigma[static_cast<std::size_t>(2 * j + 1)]);
    if (p % 2 == 1) add_singleton(term, p, sigma.back());
    d.add_term(std::move(term));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return d;
}

LcalPartial::LcalPartial(int p, int a_bound, Regularization reg, double q)
    : p_(p), a_bound_(a_bound), reg_(reg), q_(q) {
  if (p < 0) throw std::invalid_argument("LcalPartial: p must be non-negative");
  if (a_bound < 1) throw std::invalid_argument("LcalPartial: a_bound must be at least 1");
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("LcalPartial: Abel parameter must lie in (0, 1)");
}

cplx LcalPartial::exact_coefficient(const std::vector<int>& c) {
  return static_cast<double>(sorting_sign(c)) / std::pow(kTwoPi, static_cast<double>(c.size()));
}

double LcalPartial::weight(const std::vector<int>& c, double h) const {
  switch (reg_) {
    case Regularization::abel: {
      const int total = std::accumulate(c.begin(), c.end(), 0, [](int s, int v) { return s + std::abs(v); });
      return std::pow(1.0 - h, total);
    }
    case Regularization::cesaro: {
      double w = 1.0;
      for (int v : c) w *= std::max(0.0, 1.0 - std::abs(v) * h);
      return w;
    }
    case Regularization::sharp:
      break;
  }
  return 1.0;
}

cplx LcalPartial::coefficient(const std::vector<int>& c) const {
  if (static_cast<int>(c.size()) != p_) throw std::invalid_argument("LcalPartial: index length differs from p");
  for (int v : c)
    if (std::abs(v) > a_bound_) return 0.0;
  const cplx exact = exact_coefficient(c);
  if (exact == cplx{0.0} || reg_ == Regularization::sharp) return exact;
  // Richardson over three regularization levels; Abel uses h = 1-q, Fejér uses h = 1/(N+1)
  const double h0 = reg_ == Regularization::abel ? 1.0 - q_ : 1.0 / (a_bound_ + 1.0);
  const int levels = reg_ == Regularization::abel ? 3 : p_ + 1;
  std::vector<double> hs;
  std::vector<cplx> vals;
  for (int i = levels - 1; i >= 0; --i) {
    const double h = h0 * std::pow(2.0, i);
    hs.push_back(h);
    vals.push_back(exact * weight(c, h));
  }
  return richardson(hs, vals, 1.0);
}

cplx LcalPartial::pair_exponential(const std::vector<int>& b) const {
  std::vector<int> minus(b.size());
  std::transform(b.begin(), b.end(), minus.begin(), [](int v) { return -v; });
  return std::pow(kTwoPi, static_cast<double>(p_)) * coefficient(minus);
}

std::map<std::vector<int>, cplx> LcalPartial::table() const {
  std::map<std::vector<int>, cplx> out;
  std::vector<int> c(static_cast<std::size_t>(p_), -a_bound_);
  while (true) {
    const cplx v = coefficient(c);
    if (v != cplx{0.0}) out.emplace(c, v);
    std::size_t i = 0;
    while (i < c.size() && c[i] == a_bound_) c[i++] = -a_bound_;
    if (i == c.size()) break;
    ++c[i];
  }
  return out;
}

Rational ThetaWeight::exact() const {
  return Rational(global_sign * chart_sign * factorial_num * power_of_four, factorial_den) * gamma;
}

double ThetaWeight::value() const { return boost::rational_cast<double>(exact()); }

ThetaKernel build_theta(int n, int r) {
  if (n < 1 || r < 0 || 2 * r > n) throw std::out_of_range("build_theta: need n >= 1 and 0 <= r <= n/2");
  ThetaKernel kernel{n, r, {}};
  const int global = (n * (n - 1) / 2) % 2 == 0 ? 1 : -1;
  for (int k = 0; k <= r; ++k) {
    ThetaWeight w;
    w.global_sign = global;
    w.factorial_num = factorial(n - 2 * r);
    w.factorial_den = factorial(n / 2 - r);
    w.chart_sign = k % 2 == 0 ? 1 : -1;
    w.power_of_four = 1LL << (2 * (r - k));
    w.gamma = gamma_k(n, k);

    const Distribution lambda = build_lambda(n - 2 * k);
    Distribution blocks = Distribution::constant(Domain({}, {}), 1.0);
    for (int j = 1; j <= k; ++j) {
      const std::string t = "t" + std::to_string(j), theta = "theta" + std::to_string(j);
      blocks = tensor(blocks, tensor(Distribution::delta_at_zero(Domain({}, {t}), t),
                                     Distribution::delta_at_zero(Domain({theta}, {}), theta)));
    }
    Distribution dist = tensor(lambda, blocks);
    if (dist.domain() != cartan_domain(n, k)) throw std::logic_error("build_theta: chart layout mismatch");
    kernel.charts.push_back({k, w, std::move(dist)});
  }
  return kernel;
}

cplx apply_theta(const ThetaKernel& kernel, const std::map<int, ExpPoly>& data) {
  for (const auto& [k, h] : data) {
    if (k < 0 || k > kernel.r) throw std::invalid_argument("apply_theta: chart index " + std::to_string(k) + " outside 0..r");
    if (h.domain() != cartan_domain(kernel.n, k))
      throw std::invalid_argument("apply_theta: data for chart " + std::to_string(k) + " has the wrong coordinates");
  }
  cplx total{0.0};
  for (const auto& chart : kernel.charts) {
    const auto it = data.find(chart.k);
    if (it == data.end()) continue;
    total += chart.weight.value() * pair(chart.distribution, it->second);
  }
  return total;
}

}  // namespace specsep
