#include <catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include "specsep/kernels.hpp"

using namespace specsep;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

/// Two-exponential kernel written out directly, on the lift where (φ₁-φ₂)/2 ∈ (0, π).
cplx d_alt_oracle(cplx l, double phi1, double phi2, bool primed) {
  double p1 = phi1;
  while ((p1 - phi2) / 2 <= 0.0) p1 += 2 * kPi;
  while ((p1 - phi2) / 2 >= kPi) p1 -= 2 * kPi;
  const cplx lb = std::conj(l);
  const cplx a = 2.0 / (std::exp(2.0 * kPi * kI * l) - 1.0) * std::exp(kI * (p1 * l + phi2 * lb));
  const cplx b = 2.0 / (std::exp(2.0 * kPi * kI * lb) - 1.0) * std::exp(kI * (p1 * lb + phi2 * l));
  return primed ? a + b : a - b;
}

Signature random_signature(std::mt19937_64& rng, int n, int r) {
  std::uniform_int_distribution<int> ci(-6, 6), mi(-3, 3);
  std::uniform_real_distribution<double> li(0.2, 3.0);
  std::vector<int> c;
  while (static_cast<int>(c.size()) < n - 2 * r) {
    const int v = ci(rng);
    if (std::find(c.begin(), c.end(), v) == c.end()) c.push_back(v);
  }
  std::sort(c.begin(), c.end(), std::greater<>());
  std::vector<int> m;
  std::vector<double> lam;
  for (int q = 0; q < r; ++q) m.push_back(mi(rng)), lam.push_back(li(rng));
  std::sort(lam.begin(), lam.end(), std::greater<>());
  return Signature::checked(n, c, m, lam);
}

CartanPoint random_point(std::mt19937_64& rng, int n, int k) {
  std::uniform_real_distribution<double> ang(-kPi, kPi), tt(-1.5, 1.5);
  CartanPoint a;
  a.k = k;
  for (int i = 0; i < n - 2 * k; ++i) a.phi.push_back(ang(rng));
  for (int i = 0; i < k; ++i) a.theta.push_back(ang(rng)), a.t.push_back(tt(rng));
  return a;
}

/// Coefficients of X_j on the partials (φ..., θ..., t...) of chart A_k; blocks taken last-first.
std::vector<cplx> x_coefficients(int n, int k, int j) {
  const int w = n - 2 * k;
  std::vector<cplx> c(static_cast<std::size_t>(w + 2 * k), 0.0);
  if (j <= w) {
    c[static_cast<std::size_t>(j - 1)] = -kI;
    return c;
  }
  const int b = (j - w + 1) / 2;
  const int gamma = k - b + 1;
  c[static_cast<std::size_t>(w + gamma - 1)] = -0.5 * kI;
  c[static_cast<std::size_t>(w + k + gamma - 1)] = (j - w) % 2 == 1 ? 0.5 : -0.5;
  return c;
}

/// Nested central differences of a product of first-order operators.
cplx nested_fd(const ExpPoly& f, const std::vector<std::vector<cplx>>& ops, std::size_t depth, std::vector<double> x,
               int w_angles, double h) {
  if (depth == ops.size()) {
    const std::vector<double> ang(x.begin(), x.begin() + w_angles);
    const std::vector<double> lin(x.begin() + w_angles, x.end());
    return f.evaluate(ang, lin);
  }
  cplx s{0.0};
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (ops[depth][i] == cplx{0.0}) continue;
    auto xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    s += ops[depth][i] * (nested_fd(f, ops, depth + 1, xp, w_angles, h) - nested_fd(f, ops, depth + 1, xm, w_angles, h)) /
         (2 * h);
  }
  return s;
}

}  // namespace

TEST_CASE("half angle branches") {
  CHECK(half_angle(0.7, 0.7, Branch::floor) == 0.0);
  CHECK(std::abs(half_angle(3 * kPi / 2, 0.0, Branch::floor) + kPi / 4) < 1e-15);
  CHECK(std::abs(half_angle(-kPi / 2, 0.0, Branch::ceil) - 3 * kPi / 4) < 1e-15);
  CHECK_THROWS_AS(half_angle(1.0, 1.0, Branch::ceil), std::domain_error);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    const double a = u(rng), b = u(rng);
    const double f = half_angle(a, b, Branch::floor), c = half_angle(a, b, Branch::ceil);
    CHECK(f > -kPi / 2 - 1e-15);
    CHECK(f <= kPi / 2 + 1e-15);
    CHECK(c > 0.0);
    CHECK(c < kPi);
    // both are representatives of (a-b)/2 modulo π
    CHECK(std::abs(std::sin(f - (a - b) / 2)) < 1e-12);
    CHECK(std::abs(std::sin(c - (a - b) / 2)) < 1e-12);
  }
  CHECK(std::abs(wrap_angle(3 * kPi) - kPi) < 1e-15);
  CHECK(std::abs(wrap_angle(-kPi) - kPi) < 1e-15);
}

TEST_CASE("xi examples") {
  const cplx l0{0.0, -0.5};  // m = 0, λ = 1
  CHECK(std::abs(eval_xi({0.0, -0.5}, {0.0, 1.3}, false)) < 1e-16);
  CHECK(rel(eval_xi(l0, {1.0, 0.0}, false), 2.0 * kI * std::sin(1.0)) < 1e-15);
  CHECK(rel(eval_xi({1.0, -0.5}, {0.0, kPi / 2}, true), 2.0) < 1e-15);
  // alternative form e^{i(wl + w̄l̄)} - e^{i(w̄l + wl̄)} with w = θ + it
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int m = -3; m <= 3; ++m) {
    const cplx l{m / 2.0, -u(rng) * 0.5 - 1.1};
    const double t = u(rng), theta = u(rng);
    const cplx w{theta, t};
    const cplx lb = std::conj(l), wb = std::conj(w);
    const cplx alt = std::exp(kI * (w * l + wb * lb)) - std::exp(kI * (wb * l + w * lb));
    CHECK(rel(eval_xi(l, {t, theta}, false), alt) < 1e-13);
  }
}

TEST_CASE("D kernel examples") {
  const cplx l{0.0, -0.5};
  CHECK(rel(eval_D(l, 0.4, 0.4, false), 2.0 / std::tanh(kPi / 2)) < 1e-14);
  CHECK(rel(eval_D(l, kPi / 2, 0.0, false), d_alt_oracle(l, kPi / 2, 0.0, false)) < 1e-12);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int i = 0; i < 50; ++i) {
    const double a = u(rng), b = u(rng);
    const double lam = 0.3 + std::abs(u(rng));
    CHECK(rel(eval_D({0.0, -lam / 2}, a, b, false), eval_D({0.0, -lam / 2}, b, a, false)) < 1e-13);
  }
  CHECK_THROWS_AS(eval_D({0.0, -0.5}, 0.3, 0.3, true), std::domain_error);
}

TEST_CASE("D agrees with the two-exponential form") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int m = -3; m <= 3; ++m)
    for (double lam : {0.5, 1.0, 2.0, 3.7})
      for (int i = 0; i < 25; ++i) {
        const double a = u(rng), b = u(rng);
        const cplx l{m / 2.0, -lam / 2};
        for (bool primed : {false, true}) {
          INFO("m=" << m << " lam=" << lam << " primed=" << primed << " a=" << a << " b=" << b);
          CHECK(rel(eval_D(l, a, b, primed), d_alt_oracle(l, a, b, primed)) < 1e-10);
          CHECK(rel(eval_D_alt(l, a, b, primed), d_alt_oracle(l, a, b, primed)) < 1e-12);
        }
      }
}

TEST_CASE("unprimed D is continuous across the diagonal") {
  for (int m = -2; m <= 2; ++m)
    for (double lam : {0.5, 1.0, 2.0})
      for (double phi : {-2.0, 0.1, 1.7}) {
        const cplx l{m / 2.0, -lam / 2};
        const double eta = 1e-8;
        const cplx left = eval_D(l, phi - eta, phi, false), right = eval_D(l, phi + eta, phi, false);
        CHECK(std::abs(left - right) < 1e-6);
      }
}

TEST_CASE("vandermonde and signature values") {
  const cplx v21[] = {2.0, 1.0};
  const cplx v310[] = {3.0, 1.0, 0.0};
  const cplx rep[] = {1.0, 2.0, 1.0};
  CHECK(vandermonde(v21) == cplx{1.0});
  CHECK(vandermonde(v310) == cplx{6.0});
  CHECK(vandermonde(rep) == cplx{0.0});
  const auto sig = Signature::checked(2, {}, {1}, {1.5});
  CHECK(std::abs(delta_cl(sig) - cplx{0.0, -1.5}) < 1e-15);
  CHECK_THROWS_AS(Signature::checked(3, {1, 2}, {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(Signature::checked(4, {}, {0, 0}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(Signature::checked(2, {}, {0}, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(Signature::checked(2, {1}, {0}, {1.0}), std::invalid_argument);
}

TEST_CASE("epsilon sign") {
  const double one[] = {0.3};
  const double two[] = {0.1, 2.0};
  const double clockwise[] = {2.0, 1.0, 0.0};
  CHECK(epsilon_sign(one) == 1);
  CHECK(epsilon_sign(two) == -1);
  CHECK(epsilon_sign(clockwise) == 1);
  const double same[] = {0.5, 0.5};
  CHECK_THROWS(epsilon_sign(same));
  CartanPoint a{0, {0.1, 2.0}, {}, {}};
  CHECK(std::abs(std::abs(averaging_prefactor(2, a)) - 1.0) < 1e-15);
}

TEST_CASE("kappa examples") {
  const auto s1 = Signature::checked(1, {3}, {}, {});
  const CartanPoint p1{0, {0.7}, {}, {}};
  CHECK(rel(eval_kappa(1, 0, s1, p1, false), std::exp(kI * 2.1)) < 1e-15);
  CHECK(rel(eval_kappa(1, 0, s1, p1, true), std::exp(kI * 2.1)) < 1e-15);

  const auto s2 = Signature::checked(2, {}, {1}, {1.3});
  const CartanPoint p2{1, {}, {0.4}, {0.9}};
  CHECK(rel(eval_kappa(2, 1, s2, p2, false), eval_xi(s2.l(1), {0.9, 0.4}, false)) < 1e-15);
  CHECK(rel(eval_kappa(2, 1, s2, p2, true), eval_xi(s2.l(1), {0.9, 0.4}, true)) < 1e-15);

  const auto s0 = Signature::checked(2, {2, -1}, {}, {});
  CHECK(eval_kappa(2, 1, s0, p2, false) == cplx{0.0});

  CHECK_THROWS(eval_kappa(2, 0, s2, CartanPoint{0, {0.5, 0.5}, {}, {}}, false));
  CHECK_THROWS(eval_kappa(3, 0, s2, p2, false));
}

TEST_CASE("kappa for n = 3, r = 1 written out by hand") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto sig = random_signature(rng, 3, 1);
    const auto a = random_point(rng, 3, 0);
    const cplx l = sig.l(1);
    const double* phi = a.phi.data();
    const int c = sig.c[0];
    for (bool primed : {false, true}) {
      // circle to box α, chord on the other two boxes (in increasing order); crossing sign when primed
      const cplx e1 = std::exp(kI * (c * phi[0])) * eval_D(l, phi[1], phi[2], primed);
      const cplx e2 = std::exp(kI * (c * phi[1])) * eval_D(l, phi[0], phi[2], primed) * (primed ? -1.0 : 1.0);
      const cplx e3 = std::exp(kI * (c * phi[2])) * eval_D(l, phi[0], phi[1], primed);
      CHECK(rel(eval_kappa(3, 0, sig, a, primed), e1 + e2 + e3) < 1e-13);
    }
  }
}

TEST_CASE("kappa is odd under each t reflection") {
  std::mt19937_64 rng(6);
  for (int n = 2; n <= 4; ++n)
    for (int r = 1; r <= n / 2; ++r)
      for (int k = 1; k <= r; ++k)
        for (int trial = 0; trial < 5; ++trial) {
          const auto sig = random_signature(rng, n, r);
          const auto a = random_point(rng, n, k);
          for (int j = 0; j < k; ++j) {
            auto b = a;
            b.t[static_cast<std::size_t>(j)] *= -1.0;
            for (bool primed : {false, true}) {
              const cplx v = eval_kappa(n, k, sig, a, primed);
              const cplx w = eval_kappa(n, k, sig, b, primed);
              // ξ is odd in t, ξ' is even
              CHECK(rel(w, primed ? v : -v) < 1e-10);
            }
          }
        }
}

TEST_CASE("chamber-local expansion reproduces pointwise kappa") {
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 4; ++n)
    for (int r = 0; r <= n / 2; ++r)
      for (int k = 0; k <= n / 2; ++k)
        for (int trial = 0; trial < 4; ++trial) {
          const auto sig = random_signature(rng, n, r);
          const auto a = random_point(rng, n, k);
          for (bool primed : {false, true}) {
            const ExpPoly local = kappa_local(n, k, sig, a, primed);
            const cplx direct = eval_kappa(n, k, sig, a, primed);
            CHECK(rel(local.evaluate(a.angles(), a.t), direct) < 1e-10);
          }
        }
}

TEST_CASE("X operators") {
  const Domain d20 = cartan_domain(2, 0);
  const ExpPoly e = ExpPoly::exponential(d20, {3.0, -2.0});
  const double ang[] = {0.3, -1.1};
  CHECK(rel(apply_diff_vandermonde(e).evaluate(ang, {}), 5.0 * e.evaluate(ang, {})) < 1e-14);

  const Domain d21 = cartan_domain(2, 1);
  ExpPoly g(d21);
  ExpTerm t;
  t.freq = {2.0};
  LineFactor lf;
  lf.rate = {0.7, 0.2};
  t.lines = {lf};
  g.add_term(t);
  const double th[] = {0.5}, tt[] = {0.3};
  CHECK(rel(apply_diff_vandermonde(g).evaluate(th, tt), cplx{0.7, 0.2} * g.evaluate(th, tt)) < 1e-14);

  const Domain d10 = cartan_domain(1, 0);
  const ExpPoly h = ExpPoly::exponential(d10, {4.0}, {0.5, 1.0});
  const double a1[] = {0.9};
  CHECK(apply_diff_vandermonde(h).evaluate(a1, {}) == h.evaluate(a1, {}));
  CHECK_THROWS(apply_X(3, e));
}

namespace {

ExpPoly random_chart_poly(std::mt19937_64& rng, int n, int k) {
  std::normal_distribution<double> g;
  std::uniform_int_distribution<int> fr(-2, 2);
  const Domain dom = cartan_domain(n, k);
  ExpPoly f(dom);
  for (int j = 0; j < 2; ++j) {
    ExpTerm term;
    term.coeff = {g(rng), g(rng)};
    for (std::size_t i = 0; i < dom.angle_count(); ++i) term.freq.push_back(static_cast<double>(fr(rng)));
    for (std::size_t i = 0; i < dom.line_count(); ++i) {
      LineFactor lf;
      lf.rate = {0.5 * g(rng), 0.5 * g(rng)};
      lf.poly = {1.0, 0.3 * g(rng)};
      term.lines.push_back(lf);
    }
    f.add_term(term);
  }
  return f;
}

}  // namespace

TEST_CASE("each X_j against central differences") {
  std::mt19937_64 rng(8);
  for (int n = 1; n <= 4; ++n)
    for (int k = 0; k <= n / 2; ++k) {
      const ExpPoly f = random_chart_poly(rng, n, k);
      const auto a = random_point(rng, n, k);
      std::vector<double> x = a.angles();
      x.insert(x.end(), a.t.begin(), a.t.end());
      const int w = static_cast<int>(f.domain().angle_count());
      for (int j = 1; j <= n; ++j) {
        const std::vector<std::vector<cplx>> op{x_coefficients(n, k, j)};
        const double h = 1e-3;
        const cplx fd = (4.0 * nested_fd(f, op, 0, x, w, h / 2) - nested_fd(f, op, 0, x, w, h)) / 3.0;
        const cplx exact = apply_X(j, f).evaluate(a.angles(), a.t);
        CHECK(std::abs(exact - fd) < 1e-8 * std::max(1.0, std::abs(exact)));
      }
    }
}

TEST_CASE("differential Vandermonde against nested finite differences") {
  // third order at most, where nested differences stay well above round-off
  std::mt19937_64 rng(9);
  for (int n = 2; n <= 3; ++n)
    for (int k = 0; k <= n / 2; ++k) {
      const ExpPoly f = random_chart_poly(rng, n, k);
      std::vector<std::vector<cplx>> ops;
      for (int p = 1; p <= n; ++p)
        for (int q = p + 1; q <= n; ++q) {
          auto cp = x_coefficients(n, k, p), cq = x_coefficients(n, k, q);
          for (std::size_t i = 0; i < cp.size(); ++i) cp[i] -= cq[i];
          ops.push_back(cp);
        }
      const auto a = random_point(rng, n, k);
      std::vector<double> x = a.angles();
      x.insert(x.end(), a.t.begin(), a.t.end());
      const int w = static_cast<int>(f.domain().angle_count());
      const double h = 1e-2;
      const cplx fd = (4.0 * nested_fd(f, ops, 0, x, w, h / 2) - nested_fd(f, ops, 0, x, w, h)) / 3.0;
      const cplx exact = apply_diff_vandermonde(f).evaluate(a.angles(), a.t);
      INFO("n=" << n << " k=" << k);
      CHECK(std::abs(exact - fd) < 1e-6 * std::max(1.0, std::abs(exact)));
    }
}

TEST_CASE("differential Vandermonde is the product of X differences") {
  std::mt19937_64 rng(10);
  for (int n = 2; n <= 4; ++n)
    for (int k = 0; k <= n / 2; ++k) {
      const ExpPoly f = random_chart_poly(rng, n, k);
      ExpPoly composed = f;
      for (int p = 1; p <= n; ++p)
        for (int q = p + 1; q <= n; ++q) composed = apply_X(p, composed) + apply_X(q, composed) * -1.0;
      const auto a = random_point(rng, n, k);
      const cplx exact = apply_diff_vandermonde(f).evaluate(a.angles(), a.t);
      CHECK(rel(composed.evaluate(a.angles(), a.t), exact) < 1e-12);
      // power sums: Σ X_j^d
      for (int d = 0; d <= 3; ++d) {
        ExpPoly sum(f.domain());
        for (int j = 1; j <= n; ++j) {
          ExpPoly g = f;
          for (int e = 0; e < d; ++e) g = apply_X(j, g);
          sum += g;
        }
        CHECK(rel(apply_power_sum(d, f).evaluate(a.angles(), a.t), sum.evaluate(a.angles(), a.t)) < 1e-12);
      }
    }
}

TEST_CASE("glueing examples") {
  // n = 2: upper chart (θ; t), lower chart (φ₁, φ₂)
  const Domain up = cartan_domain(2, 1), low = cartan_domain(2, 0);
  const CartanPoint base{1, {}, {0.6}, {0.0}};
  const ExpPoly upper = ExpPoly::exponential(up, {2.0});
  const ExpPoly lower = ExpPoly::exponential(low, {1.0, 1.0}, kI);
  CHECK(check_glueing(lower, upper, base, 6).max_residual() < 1e-15);

  ExpPoly odd(up);
  ExpTerm t;
  LineFactor lf;
  lf.poly = {0.0, 1.0};
  t.lines = {lf};
  odd.add_term(t);
  CHECK(check_glueing(ExpPoly(low), odd, base, 6).max_residual() < 1e-15);

  const cplx bump{2e-4, -7e-4};
  const auto bad = check_glueing(lower + ExpPoly::constant(low, bump), upper, base, 6);
  CHECK(std::abs(bad.max_residual() - std::abs(bump)) < 1e-12);
  CHECK(std::abs(bad.lower_residuals.front() - bump) < 1e-12);
  CHECK_THROWS_AS(check_glueing(upper, upper, base, 4), std::invalid_argument);
}
