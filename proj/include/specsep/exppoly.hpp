#pragma once

#include <span>
#include <vector>

#include "specsep/domain.hpp"

namespace specsep {

/// Factor poly(t)·e^{rate·t}·e^{-t²/(2w²)} in one line coordinate (no Gaussian when w = 0).
struct LineFactor {
  std::vector<cplx> poly{cplx{1.0}};
  cplx rate{0.0};
  double gauss_width = 0.0;

  bool has_gaussian() const { return gauss_width > 0.0; }
  bool is_pure_exponential() const;
  cplx evaluate(double t) const;
  LineFactor derivative() const;
  LineFactor reflected() const;  // t -> -t
  /// Taylor coefficients at t = 0 up to and including `order`.
  std::vector<cplx> taylor(int order) const;
  /// Integral over the real line; requires a Gaussian unless the factor vanishes.
  cplx integral() const;
};

LineFactor operator*(const LineFactor& a, const LineFactor& b);

/// One term coeff·e^{i⟨freq,angles⟩}·Π line factors.
struct ExpTerm {
  cplx coeff{1.0};
  std::vector<cplx> freq;
  std::vector<LineFactor> lines;
};

/// Finite sum of exponential terms on a domain; angle frequencies may be complex
/// (chamber-local expansions), pairing requires them to be integers.
class ExpPoly {
 public:
  ExpPoly() = default;
  explicit ExpPoly(Domain domain);

  const Domain& domain() const { return domain_; }
  const std::vector<ExpTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Adds a term; missing freq/line entries are filled with zero frequency / unit factor.
  void add_term(ExpTerm term);

  static ExpPoly constant(const Domain& domain, cplx value);
  static ExpPoly exponential(const Domain& domain, std::vector<cplx> freq, cplx coeff = 1.0);

  cplx evaluate(std::span<const double> angles, std::span<const double> lines) const;
  /// Sum of absolute values of the term contributions (cancellation-free scale).
  double magnitude(std::span<const double> angles, std::span<const double> lines) const;

  ExpPoly derivative_angle(std::size_t i) const;
  ExpPoly derivative_line(std::size_t j) const;
  /// t_j -> -t_j.
  ExpPoly reflect_line(std::size_t j) const;

  ExpPoly& operator+=(const ExpPoly& other);
  ExpPoly& operator*=(cplx s);
  friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
  friend ExpPoly operator*(ExpPoly a, cplx s) { return a *= s; }
  friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b);

 private:
  Domain domain_;
  std::vector<ExpTerm> terms_;
};

/// Evaluates Σ_j c_j t^j.
cplx eval_poly(const std::vector<cplx>& c, cplx t);

/// Moments ∫ t^j e^{-t²/(2w²)+μt} dt for j = 0..order.
std::vector<cplx> gaussian_moments(double width, cplx mu, int order);

}  // namespace specsep
