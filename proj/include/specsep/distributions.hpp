#pragma once

#include <boost/rational.hpp>
#include <optional>
#include <vector>

#include "specsep/domain.hpp"
#include "specsep/exppoly.hpp"

namespace specsep {

using Rational = boost::rational<long long>;

/// Test functions are exponential polynomials with integrable line envelopes.
using TestFunction = ExpPoly;

/// Σ a_i·angle_i + s·line + π·offset with integer a_i and s ∈ {0, ±1}.
struct LinearForm {
  std::vector<int> angle_coeffs;
  int line = -1;
  int line_coeff = 0;
  Rational offset_over_pi{0};

  static LinearForm angle_sum(std::size_t angle_count, std::vector<std::pair<int, int>> index_coeff,
                              Rational offset_over_pi = 0);
  static LinearForm line_coordinate(std::size_t angle_count, int line, int coeff = 1);
};

/// coeff · Π δ(forms) · Π cot(angle/2) · e^{i⟨expo,angles⟩}.
struct DistTerm {
  cplx coeff{1.0};
  std::vector<LinearForm> deltas;
  std::vector<int> cots;
  std::vector<int> expo;
};

class Distribution {
 public:
  Distribution() = default;
  explicit Distribution(Domain domain);
  Distribution(Domain domain, std::vector<DistTerm> terms);

  const Domain& domain() const { return domain_; }
  const std::vector<DistTerm>& terms() const { return terms_; }

  void add_term(DistTerm term);

  /// The constant distribution (Lebesgue measure) times `value`.
  static Distribution constant(const Domain& domain, cplx value = 1.0);
  /// δ of a single coordinate, given by name.
  static Distribution delta_at_zero(const Domain& domain, const std::string& coordinate);

 private:
  Domain domain_;
  std::vector<DistTerm> terms_;
};

Distribution scale(const Distribution& d, cplx c);
Distribution add(const Distribution& a, const Distribution& b);
Distribution tensor(const Distribution& a, const Distribution& b);

/// Exact pairing ⟨d, f⟩: deltas are solved by substitution, free angles integrate
/// over (-π, π], lines over ℝ, and cot factors are principal values.
cplx pair(const Distribution& d, const TestFunction& f);

/// pair(d, e^{i⟨a,φ⟩}) for a purely angular distribution.
cplx fourier_coefficient(const Distribution& d, const std::vector<int>& a);

/// Exact value of ∫ e^{ikφ} cot(φ/2) dφ over one period.
cplx cot_fourier(long long k);

}  // namespace specsep
