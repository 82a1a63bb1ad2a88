#include "specsep/distributions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace specsep {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_multiple_of_two(const Rational& q) { return (q / Rational(2)).denominator() == 1; }

/// e^{iπq} with exact values at multiples of π/2.
cplx unit_phase(Rational q) {
  const long long den = 2 * q.denominator();
  long long num = q.numerator() % den;
  if (num < 0) num += den;
  q = Rational(num, q.denominator());
  if (q == Rational(0)) return 1.0;
  if (q == Rational(1, 2)) return {0.0, 1.0};
  if (q == Rational(1)) return -1.0;
  if (q == Rational(3, 2)) return {0.0, -1.0};
  return std::polar(1.0, kPi * boost::rational_cast<double>(q));
}

long long integer_frequency(cplx f) {
  const double re = std::round(f.real());
  if (std::abs(f.imag()) > 1e-12 || std::abs(f.real() - re) > 1e-9)
    throw std::invalid_argument("pairing requires integer angle frequencies");
  return static_cast<long long>(re);
}

/// A distribution term with its delta constraints solved: each angle is an
/// integer combination of the surviving (free) angles plus π·offset.
struct Reduced {
  std::vector<std::vector<long long>> rows;
  std::vector<Rational> offset;
  std::vector<char> free;
  std::vector<int> cot_sign;  // per free angle
  std::vector<std::optional<double>> line_value;
  cplx factor{1.0};
};

Reduced reduce(const DistTerm& term, const Domain& domain) {
  const std::size_t na = domain.angle_count();
  Reduced red;
  red.rows.assign(na, std::vector<long long>(na, 0));
  for (std::size_t i = 0; i < na; ++i) red.rows[i][i] = 1;
  red.offset.assign(na, Rational(0));
  red.free.assign(na, 1);
  red.cot_sign.assign(na, 0);
  red.line_value.assign(domain.line_count(), std::nullopt);

  for (int c : term.cots)
    if (c < 0 || static_cast<std::size_t>(c) >= na) throw std::invalid_argument("cot coordinate out of range");

  auto in_cot = [&](std::size_t g) {
    for (int c : term.cots)
      if (red.rows[static_cast<std::size_t>(c)][g] != 0) return true;
    return false;
  };

  for (const auto& form : term.deltas) {
    if (form.angle_coeffs.size() != na) throw std::invalid_argument("delta form size does not match domain");
    std::vector<long long> a(na, 0);
    Rational c = form.offset_over_pi;
    for (std::size_t i = 0; i < na; ++i) {
      if (form.angle_coeffs[i] == 0) continue;
      for (std::size_t g = 0; g < na; ++g) a[g] += form.angle_coeffs[i] * red.rows[i][g];
      c += Rational(form.angle_coeffs[i]) * red.offset[i];
    }
    const bool has_line = form.line >= 0 && form.line_coeff != 0;
    if (has_line) {
      if (static_cast<std::size_t>(form.line) >= domain.line_count() || std::abs(form.line_coeff) != 1)
        throw std::invalid_argument("delta line term must be ±1 on an existing line coordinate");
      for (long long v : a)
        if (v != 0) throw std::invalid_argument("delta forms mixing line and angle coordinates are unsupported");
      auto& slot = red.line_value[static_cast<std::size_t>(form.line)];
      if (slot) throw std::invalid_argument("delta system inconsistent: line coordinate constrained twice");
      slot = -kPi * boost::rational_cast<double>(c) / form.line_coeff;
      continue;
    }
    int pivot = -1;
    for (std::size_t g = 0; g < na; ++g) {
      if (std::abs(a[g]) != 1) continue;
      if (pivot < 0 || (in_cot(static_cast<std::size_t>(pivot)) && !in_cot(g))) pivot = static_cast<int>(g);
    }
    if (pivot < 0) {
      for (long long v : a)
        if (v != 0) throw std::invalid_argument("delta forms without a unit coefficient are unsupported");
      throw std::invalid_argument(is_multiple_of_two(c) ? "delta system degenerate (dependent forms)"
                                                        : "delta system inconsistent");
    }
    const auto f = static_cast<std::size_t>(pivot);
    const long long s = a[f];  // ±1, so φ_f = -s·(Σ_{g≠f} a_g φ_g + c)
    for (std::size_t i = 0; i < na; ++i) {
      const long long mu = red.rows[i][f];
      if (mu == 0) continue;
      for (std::size_t g = 0; g < na; ++g)
        if (g != f) red.rows[i][g] -= mu * s * a[g];
      red.rows[i][f] = 0;
      red.offset[i] -= Rational(mu * s) * c;
    }
    red.free[f] = 0;
  }

  for (int cv : term.cots) {
    const auto& row = red.rows[static_cast<std::size_t>(cv)];
    const Rational off = red.offset[static_cast<std::size_t>(cv)];
    int nonzero = 0;
    std::size_t which = 0;
    for (std::size_t g = 0; g < na; ++g)
      if (row[g] != 0) {
        ++nonzero;
        which = g;
      }
    if (nonzero == 0) {
      if (is_multiple_of_two(off)) throw std::invalid_argument("delta forces a cot argument to zero");
      red.factor /= std::tan(kPi * boost::rational_cast<double>(off) / 2.0);
      continue;
    }
    if (nonzero > 1 || std::abs(row[which]) != 1 || !is_multiple_of_two(off))
      throw std::invalid_argument("cot argument does not reduce to a single free angle");
    if (red.cot_sign[which] != 0) throw std::invalid_argument("two cot factors on the same free angle");
    red.cot_sign[which] = static_cast<int>(row[which]);
  }
  return red;
}

cplx pair_reduced(const Reduced& red, const DistTerm& dterm, const ExpTerm& fterm) {
  const std::size_t na = red.rows.size();
  std::vector<long long> k(na, 0);
  for (std::size_t i = 0; i < na; ++i) {
    k[i] = integer_frequency(fterm.freq[i]);
    if (i < dterm.expo.size()) k[i] += dterm.expo[i];
  }
  cplx value = dterm.coeff * fterm.coeff * red.factor;
  Rational phase(0);
  for (std::size_t i = 0; i < na; ++i)
    if (k[i] != 0) phase += Rational(k[i]) * red.offset[i];
  value *= unit_phase(phase);
  for (std::size_t g = 0; g < na; ++g) {
    if (!red.free[g]) continue;
    long long kg = 0;
    for (std::size_t i = 0; i < na; ++i) kg += k[i] * red.rows[i][g];
    if (red.cot_sign[g] != 0)
      value *= static_cast<double>(red.cot_sign[g]) * cot_fourier(kg);
    else if (kg != 0)
      return 0.0;
    else
      value *= 2.0 * kPi;
    if (value == cplx{0.0}) return 0.0;
  }
  for (std::size_t j = 0; j < red.line_value.size(); ++j) {
    const auto& lf = fterm.lines[j];
    value *= red.line_value[j] ? lf.evaluate(*red.line_value[j]) : lf.integral();
  }
  return value;
}

}  // namespace

LinearForm LinearForm::angle_sum(std::size_t angle_count, std::vector<std::pair<int, int>> index_coeff,
                                 Rational offset_over_pi) {
  LinearForm f;
  f.angle_coeffs.assign(angle_count, 0);
  for (auto [i, c] : index_coeff) {
    if (i < 0 || static_cast<std::size_t>(i) >= angle_count) throw std::invalid_argument("linear form index");
    f.angle_coeffs[static_cast<std::size_t>(i)] += c;
  }
  f.offset_over_pi = offset_over_pi;
  return f;
}

LinearForm LinearForm::line_coordinate(std::size_t angle_count, int line, int coeff) {
  LinearForm f;
  f.angle_coeffs.assign(angle_count, 0);
  f.line = line;
  f.line_coeff = coeff;
  return f;
}

Distribution::Distribution(Domain domain) : domain_(std::move(domain)) {}

Distribution::Distribution(Domain domain, std::vector<DistTerm> terms) : domain_(std::move(domain)) {
  for (auto& t : terms) add_term(std::move(t));
}

void Distribution::add_term(DistTerm term) {
  const auto na = domain_.angle_count();
  if (term.expo.size() > na) throw std::invalid_argument("distribution term exponent too long");
  term.expo.resize(na, 0);
  for (auto& f : term.deltas) {
    if (f.angle_coeffs.size() != na) throw std::invalid_argument("delta form size does not match domain");
    if (f.line_coeff != 0 && (f.line < 0 || static_cast<std::size_t>(f.line) >= domain_.line_count()))
      throw std::invalid_argument("delta form line index out of range");
  }
  for (int c : term.cots)
    if (c < 0 || static_cast<std::size_t>(c) >= na) throw std::invalid_argument("cot coordinate out of range");
  terms_.push_back(std::move(term));
}

Distribution Distribution::constant(const Domain& domain, cplx value) {
  return Distribution(domain, {DistTerm{value, {}, {}, {}}});
}

Distribution Distribution::delta_at_zero(const Domain& domain, const std::string& coordinate) {
  DistTerm t;
  if (int i = domain.angle_index(coordinate); i >= 0)
    t.deltas.push_back(LinearForm::angle_sum(domain.angle_count(), {{i, 1}}));
  else if (int j = domain.line_index(coordinate); j >= 0)
    t.deltas.push_back(LinearForm::line_coordinate(domain.angle_count(), j));
  else
    throw std::invalid_argument("unknown coordinate '" + coordinate + "'");
  return Distribution(domain, {t});
}

Distribution scale(const Distribution& d, cplx c) {
  auto terms = d.terms();
  for (auto& t : terms) t.coeff *= c;
  return Distribution(d.domain(), std::move(terms));
}

Distribution add(const Distribution& a, const Distribution& b) {
  if (a.domain() != b.domain()) throw std::invalid_argument("add: domains differ");
  auto terms = a.terms();
  terms.insert(terms.end(), b.terms().begin(), b.terms().end());
  return Distribution(a.domain(), std::move(terms));
}

Distribution tensor(const Distribution& a, const Distribution& b) {
  const Domain domain = a.domain().concat(b.domain());
  const std::size_t na = a.domain().angle_count();
  const std::size_t nb = b.domain().angle_count();
  const int la = static_cast<int>(a.domain().line_count());
  auto widen = [&](const LinearForm& f, std::size_t shift, int line_shift) {
    LinearForm g = f;
    g.angle_coeffs.assign(na + nb, 0);
    for (std::size_t i = 0; i < f.angle_coeffs.size(); ++i) g.angle_coeffs[i + shift] = f.angle_coeffs[i];
    if (g.line >= 0) g.line += line_shift;
    return g;
  };
  Distribution out(domain);
  for (const auto& x : a.terms())
    for (const auto& y : b.terms()) {
      DistTerm t;
      t.coeff = x.coeff * y.coeff;
      for (const auto& f : x.deltas) t.deltas.push_back(widen(f, 0, 0));
      for (const auto& f : y.deltas) t.deltas.push_back(widen(f, na, la));
      t.cots = x.cots;
      for (int c : y.cots) t.cots.push_back(c + static_cast<int>(na));
      t.expo = x.expo;
      t.expo.resize(na, 0);
      t.expo.insert(t.expo.end(), y.expo.begin(), y.expo.end());
      out.add_term(std::move(t));
    }
  return out;
}

cplx cot_fourier(long long k) {
  if (k == 0) return 0.0;
  return {0.0, k > 0 ? 2.0 * kPi : -2.0 * kPi};
}

cplx pair(const Distribution& d, const TestFunction& f) {
  if (d.domain() != f.domain()) throw std::invalid_argument("pair: domains do not match");
  cplx sum{0.0};
  for (const auto& dt : d.terms()) {
    const Reduced red = reduce(dt, d.domain());
    for (const auto& ft : f.terms()) sum += pair_reduced(red, dt, ft);
  }
  return sum;
}

cplx fourier_coefficient(const Distribution& d, const std::vector<int>& a) {
  if (d.domain().line_count() != 0) throw std::invalid_argument("fourier_coefficient: domain has line coordinates");
  if (a.size() != d.domain().angle_count()) throw std::invalid_argument("fourier_coefficient: index length");
  std::vector<cplx> freq(a.begin(), a.end());
  return pair(d, ExpPoly::exponential(d.domain(), freq));
}

}  // namespace specsep
