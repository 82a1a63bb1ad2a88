#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numbers>
#include <numeric>
#include <random>

#include "specsep/matchings.hpp"
#include "specsep/projectors.hpp"

using namespace specsep;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

long long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

/// Weight of chart k written directly from the closed formula.
Rational weight_oracle(int n, int r, int k) {
  const int global = (n * (n - 1) / 2) % 2 ? -1 : 1;
  Rational w(global * factorial(n - 2 * r), factorial(n / 2 - r));
  w *= Rational(k % 2 ? -1 : 1);
  for (int i = 0; i < r - k; ++i) w *= Rational(4);
  return w * Rational(1, factorial(k) * factorial(n - 2 * k) * (1LL << k));
}

std::vector<int> random_index(std::mt19937_64& rng, int p, int bound) {
  std::uniform_int_distribution<int> u(-bound, bound);
  std::vector<int> a(static_cast<std::size_t>(p));
  for (auto& x : a) x = u(rng);
  return a;
}

}  // namespace

TEST_CASE("gamma_k") {
  CHECK(gamma_k(3, 0) == Rational(1, 6));
  CHECK(gamma_k(4, 1) == Rational(1, 4));
  CHECK(gamma_k(2, 1) == Rational(1, 2));
  CHECK(gamma_k(6, 3) == Rational(1, 48));
  CHECK_THROWS_AS(gamma_k(3, 2), std::out_of_range);
  CHECK_THROWS_AS(gamma_k(3, -1), std::out_of_range);
}

TEST_CASE("Lambda_p small cases") {
  const Distribution l0 = build_lambda(0);
  CHECK(l0.domain().angle_count() == 0);
  CHECK(fourier_coefficient(l0, {}) == cplx{1.0});
  const Distribution l1 = build_lambda(1);
  CHECK(l1.terms().size() == 1);
  for (int a = -4; a <= 4; ++a) CHECK(std::abs(fourier_coefficient(l1, {a}) - 1.0) < 1e-15);

  const Distribution s2 = build_lambda_sigma_sum(2);
  REQUIRE(s2.terms().size() == 2);
  const cplx c = -kI / (2 * kPi * 2);
  CHECK(std::abs(s2.terms()[0].coeff - c) < 1e-16);
  CHECK(std::abs(s2.terms()[1].coeff + c) < 1e-16);
  CHECK(build_lambda_sigma_sum(3).terms().size() == 6);
  CHECK_THROWS(build_lambda(-1));
}

TEST_CASE("matching form has one term per matching and equals the permutation sum") {
  std::mt19937_64 rng(1);
  for (int p = 1; p <= 6; ++p) {
    const Distribution m = build_lambda(p);
    CHECK(static_cast<long long>(m.terms().size()) == matching_count(p));
    const Distribution s = build_lambda_sigma_sum(p);
    for (int trial = 0; trial < 30; ++trial) {
      const auto a = random_index(rng, p, 5);
      CHECK(std::abs(fourier_coefficient(m, a) - fourier_coefficient(s, a)) < 1e-12);
    }
  }
}

TEST_CASE("Lambda_p is antisymmetric and vanishes on repeated indices") {
  std::mt19937_64 rng(2);
  for (int p = 2; p <= 4; ++p) {
    const Distribution d = build_lambda(p);
    for (int trial = 0; trial < 40; ++trial) {
      const auto a = random_index(rng, p, 6);
      const cplx v = fourier_coefficient(d, a);
      for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j) {
          auto b = a;
          std::swap(b[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j)]);
          CHECK(fourier_coefficient(d, b) == -v);
          auto e = a;
          e[static_cast<std::size_t>(j)] = e[static_cast<std::size_t>(i)];
          CHECK(fourier_coefficient(d, e) == cplx{0.0});
        }
    }
  }
}

TEST_CASE("Lambda_2 Fourier values") {
  const Distribution d = build_lambda(2);
  // (-i)/(2π) · 2πi·sign(a₁ - a₂)
  CHECK(std::abs(fourier_coefficient(d, {1, 0}) - 1.0) < 1e-15);
  CHECK(std::abs(fourier_coefficient(d, {0, 1}) + 1.0) < 1e-15);
  CHECK(std::abs(fourier_coefficient(d, {4, -3}) - 1.0) < 1e-15);
}

TEST_CASE("regularized Fourier form") {
  const LcalPartial l1(1, 200);
  for (int k = -5; k <= 5; ++k) CHECK(std::abs(l1.pair_exponential({-k}) - 1.0) < 1e-3);
  CHECK(std::abs(LcalPartial::exact_coefficient({1, 0}) - 1.0 / (4 * kPi * kPi)) < 1e-16);
  CHECK(std::abs(LcalPartial::exact_coefficient({0, 1}) + 1.0 / (4 * kPi * kPi)) < 1e-16);
  CHECK(LcalPartial::exact_coefficient({2, 2}) == cplx{0.0});

  const LcalPartial l2(2, 200);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = random_index(rng, 2, 6);
    CHECK(std::abs(l2.coefficient(a) + l2.coefficient({a[1], a[0]})) < 1e-12);
    if (a[0] != a[1])
      CHECK(std::abs(l2.coefficient(a) - LcalPartial::exact_coefficient(a)) < 1e-3 * std::abs(LcalPartial::exact_coefficient(a)));
  }
  for (auto reg : {Regularization::abel, Regularization::cesaro}) {
    const LcalPartial l(2, 200, reg);
    CHECK(std::abs(l.pair_exponential({-1, 0}) * (4 * kPi * kPi) / (4 * kPi * kPi) - 1.0) < 1e-3);
  }
  // sharp truncation: exact inside the box, zero outside
  const LcalPartial sharp(2, 5, Regularization::sharp);
  CHECK(std::abs(sharp.coefficient({3, -2}) - LcalPartial::exact_coefficient({3, -2})) < 1e-15);
  CHECK(sharp.coefficient({7, 0}) == cplx{0.0});
  CHECK(sharp.table().size() == 11 * 10);
}

TEST_CASE("theta weights follow the closed formula") {
  for (int n = 1; n <= 8; ++n)
    for (int r = 0; r <= n / 2; ++r) {
      const ThetaKernel kern = build_theta(n, r);
      REQUIRE(kern.charts.size() == static_cast<std::size_t>(r + 1));
      for (const auto& ch : kern.charts) {
        CHECK(ch.weight.exact() == weight_oracle(n, r, ch.k));
        CHECK(ch.weight.value() == Catch::Approx(boost::rational_cast<double>(weight_oracle(n, r, ch.k))));
        CHECK(ch.distribution.domain() == cartan_domain(n, ch.k));
        CHECK(static_cast<long long>(ch.distribution.terms().size()) == (n - 2 * ch.k == 0 ? 1 : matching_count(n - 2 * ch.k)));
      }
    }
  CHECK(build_theta(1, 0).charts[0].weight.exact() == Rational(1));
  CHECK(build_theta(2, 0).charts[0].weight.exact() == Rational(-1));
  const auto k21 = build_theta(2, 1);
  CHECK(k21.charts[0].weight.exact() == Rational(-2));
  CHECK(k21.charts[1].weight.exact() == Rational(1, 2));
  CHECK_THROWS_AS(build_theta(3, 2), std::out_of_range);
}

TEST_CASE("apply_theta") {
  const ThetaKernel k10 = build_theta(1, 0);
  std::map<int, ExpPoly> data{{0, ExpPoly::exponential(cartan_domain(1, 0), {5.0}, {0.25, -2.0})}};
  CHECK(std::abs(apply_theta(k10, data) - cplx{0.25, -2.0}) < 1e-15);
  CHECK(apply_theta(k10, {}) == cplx{0.0});

  const ThetaKernel k21 = build_theta(2, 1);
  ExpPoly h1(cartan_domain(2, 1));
  ExpTerm t;
  t.coeff = {1.5, 0.5};
  t.freq = {3.0};
  LineFactor g;
  g.gauss_width = 0.8;
  g.poly = {2.0, 1.0};
  t.lines = {g};
  h1.add_term(t);
  const double zero[] = {0.0};
  const cplx expect = 0.5 * h1.evaluate(zero, zero);
  CHECK(std::abs(apply_theta(k21, {{0, ExpPoly(cartan_domain(2, 0))}, {1, h1}}) - expect) < 1e-14);
  CHECK(std::abs(apply_theta(k21, {{1, h1}}) - expect) < 1e-14);

  CHECK_THROWS_AS(apply_theta(k21, {{2, h1}}), std::invalid_argument);
  CHECK_THROWS_AS(apply_theta(k21, {{0, h1}}), std::invalid_argument);
}
