#pragma once

#include <map>
#include <vector>

#include "specsep/distributions.hpp"

namespace specsep {

/// 1/(k!·(n-2k)!·2^k).
Rational gamma_k(int n, int k);

/// Λ_p as a sum over matchings of {1..p}; angles phi1..phip.
Distribution build_lambda(int p);
/// Λ_p as the defining signed sum over all permutations (p! terms).
Distribution build_lambda_sigma_sum(int p);

enum class Regularization { abel, cesaro, sharp };

/// Truncated Fourier form ℒ_p = (2π)^{-p} Σ_{a₁>⋯>a_p} Σ_σ (-1)^σ e^{i⟨σa,φ⟩}.
class LcalPartial {
 public:
  LcalPartial(int p, int a_bound, Regularization reg = Regularization::abel, double q = 0.999);

  int p() const { return p_; }
  int a_bound() const { return a_bound_; }
  Regularization regularization() const { return reg_; }

  /// Regularized coefficient of e^{i⟨c,φ⟩}.
  cplx coefficient(const std::vector<int>& c) const;
  /// Unregularized coefficient: ±(2π)^{-p} for distinct entries, else 0.
  static cplx exact_coefficient(const std::vector<int>& c);
  /// ⟨ℒ_p, e^{i⟨b,φ⟩}⟩ = (2π)^p · coefficient(-b).
  cplx pair_exponential(const std::vector<int>& b) const;
  /// All nonzero coefficients within the box |c_j| ≤ a_bound.
  std::map<std::vector<int>, cplx> table() const;

 private:
  double weight(const std::vector<int>& c, double h) const;

  int p_;
  int a_bound_;
  Regularization reg_;
  double q_;
};

/// (-1)^{n(n-1)/2} · (n-2r)!/(⌊n/2⌋-r)! · (-1)^k · 4^{r-k} · γ_k, kept factor by factor.
struct ThetaWeight {
  int global_sign = 1;
  long long factorial_num = 1;
  long long factorial_den = 1;
  int chart_sign = 1;
  long long power_of_four = 1;
  Rational gamma{1};

  Rational exact() const;
  double value() const;
};

struct ThetaChart {
  int k = 0;
  ThetaWeight weight;
  Distribution distribution;  // Λ_{n-2k}(φ)·Π δ(t_j)δ(θ_j) on cartan_domain(n, k)
};

struct ThetaKernel {
  int n = 0;
  int r = 0;
  std::vector<ThetaChart> charts;  // k = 0..r
};

ThetaKernel build_theta(int n, int r);

/// Σ_k weight_k·⟨Λ_{n-2k}·Πδ, h_k⟩; absent charts contribute 0.
cplx apply_theta(const ThetaKernel& kernel, const std::map<int, ExpPoly>& data);

}  // namespace specsep
