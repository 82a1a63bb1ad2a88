#include "specsep/exppoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace specsep {

namespace {

void check_unique(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::set<std::string> seen;
  for (const auto* names : {&a, &b})
    for (const auto& s : *names)
      if (!seen.insert(s).second) throw std::invalid_argument("domain: duplicate coordinate name '" + s + "'");
}

std::vector<cplx> poly_mul(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<cplx> out(a.size() + b.size() - 1, cplx{0.0});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<cplx> truncate(std::vector<cplx> c, int order) {
  c.resize(static_cast<std::size_t>(order) + 1, cplx{0.0});
  return c;
}

}  // namespace

Domain::Domain(std::vector<std::string> angles, std::vector<std::string> lines)
    : angles_(std::move(angles)), lines_(std::move(lines)) {
  check_unique(angles_, lines_);
}

int Domain::angle_index(const std::string& name) const {
  auto it = std::find(angles_.begin(), angles_.end(), name);
  return it == angles_.end() ? -1 : static_cast<int>(it - angles_.begin());
}

int Domain::line_index(const std::string& name) const {
  auto it = std::find(lines_.begin(), lines_.end(), name);
  return it == lines_.end() ? -1 : static_cast<int>(it - lines_.begin());
}

Domain Domain::concat(const Domain& other) const {
  auto angles = angles_;
  auto lines = lines_;
  angles.insert(angles.end(), other.angles_.begin(), other.angles_.end());
  lines.insert(lines.end(), other.lines_.begin(), other.lines_.end());
  return Domain(std::move(angles), std::move(lines));
}

Domain cartan_domain(int n, int k) {
  if (n < 1 || k < 0 || 2 * k > n) throw std::invalid_argument("cartan_domain: require 0 <= k <= n/2");
  std::vector<std::string> angles, lines;
  for (int i = 1; i <= n - 2 * k; ++i) angles.push_back("phi" + std::to_string(i));
  for (int j = 1; j <= k; ++j) angles.push_back("theta" + std::to_string(j));
  for (int j = 1; j <= k; ++j) lines.push_back("t" + std::to_string(j));
  return Domain(std::move(angles), std::move(lines));
}

cplx eval_poly(const std::vector<cplx>& c, cplx t) {
  cplx acc{0.0};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::vector<cplx> gaussian_moments(double width, cplx mu, int order) {
  if (width <= 0.0) throw std::invalid_argument("gaussian_moments: width must be positive");
  const double var = width * width;
  const cplx mean = mu * var;
  const cplx norm = std::sqrt(2.0 * std::numbers::pi) * width * std::exp(mu * mu * var / 2.0);
  std::vector<cplx> m(static_cast<std::size_t>(order) + 1);
  // raw moments of N(mean, var): E[X^j] = mean·E[X^{j-1}] + (j-1)·var·E[X^{j-2}]
  cplx prev2{0.0}, prev1{1.0};
  for (int j = 0; j <= order; ++j) {
    cplx cur = j == 0 ? cplx{1.0} : mean * prev1 + static_cast<double>(j - 1) * var * prev2;
    if (j > 0) {
      prev2 = prev1;
      prev1 = cur;
    }
    m[static_cast<std::size_t>(j)] = norm * cur;
  }
  return m;
}

bool LineFactor::is_pure_exponential() const {
  if (has_gaussian()) return false;
  for (std::size_t j = 1; j < poly.size(); ++j)
    if (poly[j] != cplx{0.0}) return false;
  return true;
}

cplx LineFactor::evaluate(double t) const {
  cplx v = eval_poly(poly, t) * std::exp(rate * t);
  if (has_gaussian()) v *= std::exp(-t * t / (2.0 * gauss_width * gauss_width));
  return v;
}

LineFactor LineFactor::derivative() const {
  // d/dt [P e^{rt} g] = (P' + r P - t P / w²) e^{rt} g
  LineFactor out = *this;
  std::vector<cplx> d(poly.size() + 1, cplx{0.0});
  for (std::size_t j = 0; j < poly.size(); ++j) {
    if (j > 0) d[j - 1] += static_cast<double>(j) * poly[j];
    d[j] += rate * poly[j];
    if (has_gaussian()) d[j + 1] -= poly[j] / (gauss_width * gauss_width);
  }
  while (d.size() > 1 && d.back() == cplx{0.0}) d.pop_back();
  out.poly = std::move(d);
  return out;
}

LineFactor LineFactor::reflected() const {
  LineFactor out = *this;
  out.rate = -rate;
  for (std::size_t j = 1; j < out.poly.size(); j += 2) out.poly[j] = -out.poly[j];
  return out;
}

std::vector<cplx> LineFactor::taylor(int order) const {
  std::vector<cplx> series = truncate(poly, order);
  std::vector<cplx> e(static_cast<std::size_t>(order) + 1);
  cplx term{1.0};
  for (int j = 0; j <= order; ++j) {
    e[static_cast<std::size_t>(j)] = term;
    term *= rate / static_cast<double>(j + 1);
  }
  series = truncate(poly_mul(series, e), order);
  if (has_gaussian()) {
    std::vector<cplx> g(static_cast<std::size_t>(order) + 1, cplx{0.0});
    const double a = -1.0 / (2.0 * gauss_width * gauss_width);
    double coef = 1.0;
    for (int j = 0; 2 * j <= order; ++j) {
      g[static_cast<std::size_t>(2 * j)] = coef;
      coef *= a / (j + 1);
    }
    series = truncate(poly_mul(series, g), order);
  }
  return series;
}

cplx LineFactor::integral() const {
  if (std::all_of(poly.begin(), poly.end(), [](cplx c) { return c == cplx{0.0}; })) return 0.0;
  if (!has_gaussian()) throw std::domain_error("non-integrable line envelope (no Gaussian factor)");
  const auto m = gaussian_moments(gauss_width, rate, static_cast<int>(poly.size()) - 1);
  cplx sum{0.0};
  for (std::size_t j = 0; j < poly.size(); ++j) sum += poly[j] * m[j];
  return sum;
}

LineFactor operator*(const LineFactor& a, const LineFactor& b) {
  LineFactor out;
  out.poly = poly_mul(a.poly, b.poly);
  out.rate = a.rate + b.rate;
  if (a.has_gaussian() && b.has_gaussian()) {
    const double inv = 1.0 / (a.gauss_width * a.gauss_width) + 1.0 / (b.gauss_width * b.gauss_width);
    out.gauss_width = 1.0 / std::sqrt(inv);
  } else {
    out.gauss_width = std::max(a.gauss_width, b.gauss_width);
  }
  return out;
}

ExpPoly::ExpPoly(Domain domain) : domain_(std::move(domain)) {}

void ExpPoly::add_term(ExpTerm term) {
  if (term.freq.size() > domain_.angle_count() || term.lines.size() > domain_.line_count())
    throw std::invalid_argument("ExpPoly term has more coordinates than its domain");
  term.freq.resize(domain_.angle_count(), cplx{0.0});
  term.lines.resize(domain_.line_count());
  terms_.push_back(std::move(term));
}

ExpPoly ExpPoly::constant(const Domain& domain, cplx value) {
  ExpPoly p(domain);
  p.add_term({value, {}, {}});
  return p;
}

ExpPoly ExpPoly::exponential(const Domain& domain, std::vector<cplx> freq, cplx coeff) {
  ExpPoly p(domain);
  p.add_term({coeff, std::move(freq), {}});
  return p;
}

cplx ExpPoly::evaluate(std::span<const double> angles, std::span<const double> lines) const {
  cplx sum{0.0};
  for (const auto& t : terms_) {
    cplx phase{0.0};
    for (std::size_t i = 0; i < t.freq.size(); ++i) phase += t.freq[i] * angles[i];
    cplx v = t.coeff * std::exp(cplx{0.0, 1.0} * phase);
    for (std::size_t j = 0; j < t.lines.size(); ++j) v *= t.lines[j].evaluate(lines[j]);
    sum += v;
  }
  return sum;
}

double ExpPoly::magnitude(std::span<const double> angles, std::span<const double> lines) const {
  double sum = 0.0;
  for (const auto& t : terms_) {
    cplx phase{0.0};
    for (std::size_t i = 0; i < t.freq.size(); ++i) phase += t.freq[i] * angles[i];
    cplx v = t.coeff * std::exp(cplx{0.0, 1.0} * phase);
    for (std::size_t j = 0; j < t.lines.size(); ++j) v *= t.lines[j].evaluate(lines[j]);
    sum += std::abs(v);
  }
  return sum;
}

ExpPoly ExpPoly::derivative_angle(std::size_t i) const {
  if (i >= domain_.angle_count()) throw std::out_of_range("derivative_angle: index");
  ExpPoly out(domain_);
  for (auto t : terms_) {
    t.coeff *= cplx{0.0, 1.0} * t.freq[i];
    if (t.coeff != cplx{0.0}) out.terms_.push_back(std::move(t));
  }
  return out;
}

ExpPoly ExpPoly::derivative_line(std::size_t j) const {
  if (j >= domain_.line_count()) throw std::out_of_range("derivative_line: index");
  ExpPoly out(domain_);
  for (auto t : terms_) {
    t.lines[j] = t.lines[j].derivative();
    out.terms_.push_back(std::move(t));
  }
  return out;
}

ExpPoly ExpPoly::reflect_line(std::size_t j) const {
  if (j >= domain_.line_count()) throw std::out_of_range("reflect_line: index");
  ExpPoly out = *this;
  for (auto& t : out.terms_) t.lines[j] = t.lines[j].reflected();
  return out;
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& other) {
  if (other.domain_ != domain_) throw std::invalid_argument("ExpPoly sum: domains differ");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

ExpPoly& ExpPoly::operator*=(cplx s) {
  for (auto& t : terms_) t.coeff *= s;
  return *this;
}

ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
  if (a.domain_ != b.domain_) throw std::invalid_argument("ExpPoly product: domains differ");
  ExpPoly out(a.domain_);
  out.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) {
      ExpTerm t{x.coeff * y.coeff, x.freq, {}};
      for (std::size_t i = 0; i < t.freq.size(); ++i) t.freq[i] += y.freq[i];
      for (std::size_t j = 0; j < x.lines.size(); ++j) t.lines.push_back(x.lines[j] * y.lines[j]);
      out.terms_.push_back(std::move(t));
    }
  return out;
}

}  // namespace specsep
