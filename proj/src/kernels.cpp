#include "specsep/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace specsep {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};
constexpr double kDiagonalTol = 1e-13;

int integer_m(cplx l) {
  const double m = 2.0 * l.real();
  if (std::abs(m - std::round(m)) > 1e-9) throw std::invalid_argument("l must have integer m = 2 Re l");
  return static_cast<int>(std::lround(m));
}

double lambda_of(cplx l) { return -2.0 * l.imag(); }

bool even(int m) { return m % 2 == 0; }

// Ratios of hyperbolic functions h(λx)/g(λπ/2) for |x| <= π/2, free of overflow.
// Each returns the value for λ > 0 and the caller applies the parity in λ.
double sinh_over_sinh(double lam, double x) {
  const double a = lam * std::abs(x), b = lam * kPi / 2.0;
  const double v = std::exp(a - b) * (-std::expm1(-2.0 * a)) / (-std::expm1(-2.0 * b));
  return x < 0 ? -v : v;
}
double cosh_over_sinh(double lam, double x) {
  const double a = lam * std::abs(x), b = lam * kPi / 2.0;
  return std::exp(a - b) * (1.0 + std::exp(-2.0 * a)) / (-std::expm1(-2.0 * b));
}
double sinh_over_cosh(double lam, double x) {
  const double a = lam * std::abs(x), b = lam * kPi / 2.0;
  const double v = std::exp(a - b) * (-std::expm1(-2.0 * a)) / (1.0 + std::exp(-2.0 * b));
  return x < 0 ? -v : v;
}
double cosh_over_cosh(double lam, double x) {
  const double a = lam * std::abs(x), b = lam * kPi / 2.0;
  return std::exp(a - b) * (1.0 + std::exp(-2.0 * a)) / (1.0 + std::exp(-2.0 * b));
}

double sgn(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

bool coincide(double a, double b) { return std::abs(std::sin((a - b) / 2.0)) < kDiagonalTol; }

void check_chart(int n, int k, const CartanPoint& a) {
  if (n < 1 || k < 0 || 2 * k > n) throw std::invalid_argument("chart index out of range");
  if (a.k != k || static_cast<int>(a.phi.size()) != n - 2 * k || static_cast<int>(a.theta.size()) != k ||
      static_cast<int>(a.t.size()) != k)
    throw std::invalid_argument("Cartan point does not belong to the requested chart");
}

void check_signature(int n, const Signature& sig) {
  if (sig.n != n || sig.r < 0 || 2 * sig.r > n || static_cast<int>(sig.c.size()) != n - 2 * sig.r ||
      static_cast<int>(sig.m.size()) != sig.r || static_cast<int>(sig.lambda.size()) != sig.r)
    throw std::invalid_argument("signature sizes do not match n and r");
}

void check_nondegenerate(const CartanPoint& a) {
  for (std::size_t p = 0; p < a.phi.size(); ++p)
    for (std::size_t q = p + 1; q < a.phi.size(); ++q)
      if (coincide(a.phi[p], a.phi[q])) throw std::domain_error("degenerate Cartan point: coincident angles");
}

/// Chart layout recovered from a cartan_domain.
struct Chart {
  int n, k, white;
};

Chart chart_of(const Domain& d) {
  const int k = static_cast<int>(d.line_count());
  const int n = static_cast<int>(d.angle_count()) + k;
  if (cartan_domain(n, k) != d) throw std::invalid_argument("ExpPoly domain is not a Cartan chart");
  return {n, k, n - 2 * k};
}

/// Σ a·∂_angle + b·∂_line applied to F; unused slots are -1.
ExpPoly first_order(const ExpPoly& f, int angle, cplx angle_coeff, int line, cplx line_coeff) {
  ExpPoly out(f.domain());
  for (const auto& term : f.terms()) {
    cplx scalar{0.0};
    if (angle >= 0) scalar += angle_coeff * kI * term.freq[static_cast<std::size_t>(angle)];
    if (line >= 0) {
      const auto& lf = term.lines[static_cast<std::size_t>(line)];
      if (lf.is_pure_exponential()) {
        scalar += line_coeff * lf.rate;
      } else {
        ExpTerm d = term;
        d.coeff *= line_coeff;
        d.lines[static_cast<std::size_t>(line)] = lf.derivative();
        out.add_term(std::move(d));
      }
    }
    if (scalar != cplx{0.0}) {
      ExpTerm s = term;
      s.coeff *= scalar;
      out.add_term(std::move(s));
    }
  }
  return out;
}

struct XOperator {
  int angle;
  cplx angle_coeff;
  int line;
  cplx line_coeff;
};

XOperator x_operator(const Chart& ch, int j) {
  if (j < 1 || j > ch.n) throw std::invalid_argument("X index out of range");
  if (j <= ch.white) return {j - 1, -kI, -1, 0.0};
  // blocks follow the white angles in reverse order: (t_k, θ_k), ..., (t_1, θ_1)
  const int b = (j - ch.white + 1) / 2;
  const int gamma = ch.k - b + 1;
  const bool first = (j - ch.white) % 2 == 1;
  return {ch.white + gamma - 1, -0.5 * kI, gamma - 1, first ? 0.5 : -0.5};
}

ExpPoly apply_operator(const XOperator& op, const ExpPoly& f) {
  return first_order(f, op.angle, op.angle_coeff, op.line, op.line_coeff);
}

ExpPoly factor_circle(const Domain& dom, int box, int c) {
  std::vector<cplx> freq(dom.angle_count(), 0.0);
  freq[static_cast<std::size_t>(box - 1)] = static_cast<double>(c);
  return ExpPoly::exponential(dom, freq);
}

ExpPoly factor_xi(const Domain& dom, int white, int z, cplx l, bool primed, XiVariant variant) {
  const int m = integer_m(l);
  const double lam = lambda_of(l);
  ExpPoly out(dom);
  const auto theta = static_cast<std::size_t>(white + z - 1);
  for (int s : {1, -1}) {
    ExpTerm term;
    term.freq.assign(dom.angle_count(), 0.0);
    term.lines.resize(dom.line_count());
    term.freq[theta] = static_cast<double>(m);
    if (primed && variant == XiVariant::theta_exponent)
      term.freq[theta] += s * lam;
    else
      term.lines[static_cast<std::size_t>(z - 1)].rate = kI * (s * lam);
    term.coeff = primed ? -1.0 : static_cast<double>(s);
    out.add_term(std::move(term));
  }
  return out;
}

ExpPoly factor_D(const Domain& dom, int lo, int hi, cplx l, double phi_lo, double phi_hi, bool primed) {
  const double u = half_angle(phi_lo, phi_hi, Branch::ceil);
  const double lift = std::round((phi_hi + 2.0 * u - phi_lo) / (2.0 * kPi));
  const cplx lb = std::conj(l);
  const cplx A = 2.0 / (std::exp(2.0 * kPi * kI * l) - 1.0);
  const cplx B = 2.0 / (std::exp(2.0 * kPi * kI * lb) - 1.0);
  ExpPoly out(dom);
  auto add = [&](cplx coeff, cplx f_lo, cplx f_hi) {
    ExpTerm term;
    term.freq.assign(dom.angle_count(), 0.0);
    term.freq[static_cast<std::size_t>(lo - 1)] = f_lo;
    term.freq[static_cast<std::size_t>(hi - 1)] = f_hi;
    term.coeff = coeff * std::exp(2.0 * kPi * kI * lift * f_lo);
    out.add_term(std::move(term));
  };
  add(A, l, lb);
  add(primed ? B : -B, lb, l);
  return out;
}

}  // namespace

double wrap_angle(double phi) {
  double r = std::remainder(phi, 2.0 * kPi);  // [-π, π]
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

double half_angle(double phi1, double phi2, Branch branch) {
  const double x = (phi1 - phi2) / 2.0;
  if (branch == Branch::floor) {
    double y = x - kPi * std::round(x / kPi);
    if (y <= -kPi / 2.0) y += kPi;
    return y;
  }
  double y = x - kPi * std::floor(x / kPi);
  if (y >= kPi) y -= kPi;
  if (std::abs(std::sin(y)) < kDiagonalTol) throw std::domain_error("half_angle: ceil branch undefined on the diagonal");
  return y;
}

Signature Signature::checked(int n, std::vector<int> c, std::vector<int> m, std::vector<double> lambda) {
  Signature s;
  s.n = n;
  s.r = static_cast<int>(m.size());
  s.c = std::move(c);
  s.m = std::move(m);
  s.lambda = std::move(lambda);
  check_signature(n, s);
  for (std::size_t i = 1; i < s.c.size(); ++i)
    if (s.c[i - 1] <= s.c[i]) throw std::invalid_argument("signature: c must be strictly decreasing");
  for (std::size_t i = 0; i < s.lambda.size(); ++i) {
    if (!(s.lambda[i] > 0.0)) throw std::invalid_argument("signature: lambda must be positive");
    if (i > 0 && s.lambda[i - 1] <= s.lambda[i]) throw std::invalid_argument("signature: lambda must be strictly decreasing");
  }
  return s;
}

cplx Signature::l(int q) const {
  if (q < 1 || q > r) throw std::out_of_range("signature l index");
  const auto i = static_cast<std::size_t>(q - 1);
  return {m[i] / 2.0, -lambda[i] / 2.0};
}

std::vector<cplx> Signature::values() const {
  std::vector<cplx> v(c.begin(), c.end());
  for (int q = 1; q <= r; ++q) {
    v.push_back(l(q));
    v.push_back(std::conj(l(q)));
  }
  return v;
}

std::vector<double> CartanPoint::angles() const {
  std::vector<double> v = phi;
  v.insert(v.end(), theta.begin(), theta.end());
  return v;
}

cplx eval_xi(cplx l, cplx z, bool primed, XiVariant variant) {
  const int m = integer_m(l);
  const double lam = lambda_of(l);
  const double t = z.real(), theta = z.imag();
  const cplx phase = std::exp(kI * (m * theta));
  if (!primed) return phase * 2.0 * kI * std::sin(lam * t);
  const double arg = variant == XiVariant::theta_exponent ? theta : t;
  return -phase * 2.0 * std::cos(lam * arg);
}

cplx eval_D(cplx l, double phi1, double phi2, bool primed) {
  const int m = integer_m(l);
  const double lam = lambda_of(l);
  const double ls = sgn(lam), la = std::abs(lam);
  if (even(m)) {
    if (la == 0.0) throw std::domain_error("eval_D: singular at lambda = 0 for even m");
    const double f = half_angle(phi1, phi2, Branch::floor);
    const cplx pre = 2.0 * std::exp(kI * (m * (phi1 + phi2) / 2.0));
    const double x = std::abs(f) - kPi / 2.0;
    if (!primed) return pre * (ls * cosh_over_sinh(la, x));
    if (coincide(phi1, phi2)) throw std::domain_error("eval_D: primed even kernel undefined on the diagonal");
    const double ratio = la == 0.0 ? x / (kPi / 2.0) : sinh_over_sinh(la, x);
    return pre * ratio * sgn(f);
  }
  const double c = half_angle(phi1, phi2, Branch::ceil);
  const cplx pre = -2.0 * std::exp(kI * ((m - 1) * (phi1 + phi2) / 2.0)) * std::exp(kI * (phi2 + c));
  const double x = c - kPi / 2.0;
  if (!primed) return pre * (ls * sinh_over_cosh(la, x));
  return pre * cosh_over_cosh(la, x);
}

cplx eval_D_alt(cplx l, double phi1, double phi2, bool primed) {
  const double u = half_angle(phi1, phi2, Branch::ceil);
  const double p1 = phi2 + 2.0 * u;
  const cplx lb = std::conj(l);
  const cplx A = 2.0 / (std::exp(2.0 * kPi * kI * l) - 1.0);
  const cplx B = 2.0 / (std::exp(2.0 * kPi * kI * lb) - 1.0);
  const cplx first = A * std::exp(kI * (p1 * l + phi2 * lb));
  const cplx second = B * std::exp(kI * (p1 * lb + phi2 * l));
  return primed ? first + second : first - second;
}

cplx eval_kappa(int n, int k, const Signature& sig, const CartanPoint& a, bool primed, KappaOptions options) {
  check_chart(n, k, a);
  check_signature(n, sig);
  check_nondegenerate(a);
  if (k > sig.r) return 0.0;
  const bool use_sign = primed || options.sign == KappaSign::signed_both;
  cplx sum{0.0};
  for (const auto& d : enumerate_diagrams(n, sig.r, k)) {
    cplx v = use_sign ? static_cast<double>(diagram_sign(d)) : 1.0;
    for (const auto& arc : d.circle_arcs())
      v *= std::exp(kI * (sig.c[static_cast<std::size_t>(arc.circle - 1)] * a.phi[static_cast<std::size_t>(arc.box - 1)]));
    for (const auto& arc : d.block_arcs()) {
      const auto z = static_cast<std::size_t>(arc.z - 1);
      v *= eval_xi(sig.l(arc.l), {a.t[z], a.theta[z]}, primed, options.xi);
    }
    for (const auto& arc : d.pair_arcs())
      v *= eval_D(sig.l(arc.l), a.phi[static_cast<std::size_t>(arc.lo - 1)], a.phi[static_cast<std::size_t>(arc.hi - 1)],
                  primed);
    sum += v;
  }
  return sum;
}

ExpPoly kappa_local(int n, int k, const Signature& sig, const CartanPoint& a, bool primed, KappaOptions options) {
  check_chart(n, k, a);
  check_signature(n, sig);
  check_nondegenerate(a);
  const Domain dom = cartan_domain(n, k);
  ExpPoly sum(dom);
  if (k > sig.r) return sum;
  const bool use_sign = primed || options.sign == KappaSign::signed_both;
  const int white = n - 2 * k;
  for (const auto& d : enumerate_diagrams(n, sig.r, k)) {
    ExpPoly term = ExpPoly::constant(dom, use_sign ? static_cast<double>(diagram_sign(d)) : 1.0);
    for (const auto& arc : d.circle_arcs())
      term = term * factor_circle(dom, arc.box, sig.c[static_cast<std::size_t>(arc.circle - 1)]);
    for (const auto& arc : d.block_arcs()) term = term * factor_xi(dom, white, arc.z, sig.l(arc.l), primed, options.xi);
    for (const auto& arc : d.pair_arcs())
      term = term * factor_D(dom, arc.lo, arc.hi, sig.l(arc.l), a.phi[static_cast<std::size_t>(arc.lo - 1)],
                             a.phi[static_cast<std::size_t>(arc.hi - 1)], primed);
    sum += term;
  }
  return sum;
}

ExpPoly apply_X(int j, const ExpPoly& f) { return apply_operator(x_operator(chart_of(f.domain()), j), f); }

ExpPoly apply_diff_vandermonde(const ExpPoly& f) {
  const Chart ch = chart_of(f.domain());
  ExpPoly out = f;
  for (int p = 1; p <= ch.n; ++p)
    for (int q = p + 1; q <= ch.n; ++q) {
      const XOperator xp = x_operator(ch, p), xq = x_operator(ch, q);
      ExpPoly next = apply_operator(xp, out);
      next += apply_operator(xq, out) * -1.0;
      out = std::move(next);
    }
  return out;
}

ExpPoly apply_power_sum(int degree, const ExpPoly& f) {
  if (degree < 0) throw std::invalid_argument("power sum degree must be non-negative");
  const Chart ch = chart_of(f.domain());
  ExpPoly out(f.domain());
  for (int j = 1; j <= ch.n; ++j) {
    ExpPoly g = f;
    for (int d = 0; d < degree; ++d) g = apply_operator(x_operator(ch, j), g);
    out += g;
  }
  return out;
}

cplx vandermonde(std::span<const cplx> values) {
  cplx v{1.0};
  for (std::size_t p = 0; p < values.size(); ++p)
    for (std::size_t q = p + 1; q < values.size(); ++q) v *= values[p] - values[q];
  return v;
}

cplx delta_cl(const Signature& sig) {
  const auto v = sig.values();
  return vandermonde(v);
}

int epsilon_sign(std::span<const double> phi) {
  int sign = 1;
  for (std::size_t p = 0; p < phi.size(); ++p)
    for (std::size_t q = p + 1; q < phi.size(); ++q) {
      const double s = std::sin((wrap_angle(phi[p]) - wrap_angle(phi[q])) / 2.0);
      if (std::abs(s) < kDiagonalTol) throw std::domain_error("epsilon_sign: coincident angles");
      if (s < 0) sign = -sign;
    }
  return sign;
}

cplx averaging_prefactor(int n, const CartanPoint& a) {
  check_chart(n, a.k, a);
  double half_det_arg = 0.0;
  for (double p : a.phi) half_det_arg += wrap_angle(p) / 2.0;
  for (double th : a.theta) half_det_arg += wrap_angle(th);
  return static_cast<double>(epsilon_sign(a.phi)) * std::exp(-kI * ((n - 1) * half_det_arg));
}

}  // namespace specsep
