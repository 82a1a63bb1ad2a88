#include "specsep/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace specsep {

namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 21>;

cplx rule(const ComplexIntegrand& f, double a, double b) {
  return Rule::integrate([&](double x) { return f(x); }, a, b, 0, 0.0, nullptr);
}

/// Bisects until the two halves agree with the whole to max(rel_tol·|I|, abs_density·width).
void adapt(const ComplexIntegrand& f, double a, double b, cplx whole, double rel_tol, double abs_density, int depth,
           QuadResult& acc) {
  const double mid = 0.5 * (a + b);
  const cplx left = rule(f, a, mid), right = rule(f, mid, b);
  const double diff = std::abs(left + right - whole);
  if (depth == 0 || diff <= std::max(rel_tol * std::abs(left + right), abs_density * (b - a))) {
    acc.value += left + right;
    acc.error += diff;
    return;
  }
  adapt(f, a, mid, left, rel_tol, abs_density, depth - 1, acc);
  adapt(f, mid, b, right, rel_tol, abs_density, depth - 1, acc);
}

}  // namespace

QuadResult integrate(const ComplexIntegrand& f, double a, double b, double rel_tol, int max_depth) {
  if (!(b >= a)) throw std::invalid_argument("integrate: empty or reversed interval");
  QuadResult out;
  if (a == b) return out;
  constexpr double abs_density = 1e-15;
  adapt(f, a, b, rule(f, a, b), rel_tol, abs_density, max_depth, out);
  if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag()))
    throw std::domain_error("integrate: non-finite result");
  return out;
}

namespace {

/// Least squares on the normal equations for a tiny dense system.
std::vector<cplx> least_squares(const std::vector<std::vector<double>>& rows, const std::vector<cplx>& rhs) {
  const std::size_t n = rows.front().size();
  std::vector<std::vector<cplx>> a(n, std::vector<cplx>(n + 1, 0.0));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a[i][j] += rows[r][i] * rows[r][j];
      a[i][n] += rows[r][i] * rhs[r];
    }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    if (std::abs(a[c][c]) == 0.0) throw std::domain_error("tail fit is singular");
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const cplx factor = a[r][c] / a[c][c];
      for (std::size_t j = c; j <= n; ++j) a[r][j] -= factor * a[c][j];
    }
  }
  std::vector<cplx> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return x;
}

cplx fitted_tail(const ComplexIntegrand& f, double cutoff, int terms) {
  constexpr int samples = 24;
  std::vector<std::vector<double>> rows;
  std::vector<cplx> rhs;
  for (int s = 0; s < samples; ++s) {
    const double lam = cutoff * (0.5 + 0.5 * s / (samples - 1));
    std::vector<double> row;
    // scaled basis (cutoff/λ)^{2j} keeps the system well conditioned
    for (int j = 1; j <= terms; ++j) row.push_back(std::pow(cutoff / lam, 2 * j));
    rows.push_back(std::move(row));
    rhs.push_back(f(lam));
  }
  const auto coef = least_squares(rows, rhs);
  // ∫_Λ^∞ (Λ/λ)^{2j} dλ = Λ/(2j-1)
  cplx tail{0.0};
  for (int j = 1; j <= terms; ++j) tail += coef[static_cast<std::size_t>(j - 1)] * cutoff / (2.0 * j - 1.0);
  return tail;
}

}  // namespace

TailResult integrate_algebraic_tail(const ComplexIntegrand& f, double cutoff, int tail_terms, double rel_tol) {
  if (!(cutoff > 0.0) || tail_terms < 1) throw std::invalid_argument("integrate_algebraic_tail: bad parameters");
  TailResult out;
  const auto head = integrate(f, 0.0, cutoff, rel_tol);
  out.head = head.value;
  out.tail = fitted_tail(f, cutoff, tail_terms);
  const cplx alt = fitted_tail(f, cutoff, tail_terms + 1);
  // the richer fit is itself truncated, so its distance is doubled to stay conservative
  out.error = head.error + 2.0 * std::abs(out.tail - alt);
  return out;
}

cplx richardson(std::span<const double> h, std::span<const cplx> values, double order) {
  if (h.size() != values.size() || h.empty()) throw std::invalid_argument("richardson: size mismatch");
  // Neville extrapolation to x = 0 of a polynomial in x = h^order
  std::vector<cplx> t(values.begin(), values.end());
  for (std::size_t level = 1; level < t.size(); ++level)
    for (std::size_t i = t.size() - 1; i >= level; --i) {
      const double a = std::pow(h[i - level], order);
      const double b = std::pow(h[i], order);
      t[i] = (a * t[i] - b * t[i - 1]) / (a - b);
      if (i == level) break;
    }
  return t.back();
}

}  // namespace specsep
