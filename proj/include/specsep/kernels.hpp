#pragma once

#include <span>
#include <vector>

#include "specsep/diagrams.hpp"
#include "specsep/exppoly.hpp"

namespace specsep {

enum class Branch { floor, ceil };

/// Representative of (φ₁-φ₂)/2 mod π in (-π/2, π/2] (floor) or (0, π) (ceil).
double half_angle(double phi1, double phi2, Branch branch);

/// Angle reduced to (-π, π].
double wrap_angle(double phi);

/// Spectral parameters c₁ > ... > c_{n-2r} and l_q = (m_q - iλ_q)/2.
struct Signature {
  int n = 0;
  int r = 0;
  std::vector<int> c;
  std::vector<int> m;
  std::vector<double> lambda;

  /// Validates sizes, strict ordering of c and λ, and positivity of λ.
  static Signature checked(int n, std::vector<int> c, std::vector<int> m, std::vector<double> lambda);

  cplx l(int q) const;  // 1-based
  /// (c_1, ..., c_{n-2r}, l_1, l̄_1, ..., l_r, l̄_r).
  std::vector<cplx> values() const;
};

/// Point of the chart A_k: angles φ (n-2k), block angles θ (k), block radii t (k).
struct CartanPoint {
  int k = 0;
  std::vector<double> phi;
  std::vector<double> theta;
  std::vector<double> t;

  std::vector<double> angles() const;  // φ then θ, matching cartan_domain
};

enum class XiVariant {
  line,         // e^{iλt} ± e^{-iλt}
  theta_exponent  // primed kernel with θ in place of t in the exponent
};

cplx eval_xi(cplx l, cplx z, bool primed, XiVariant variant = XiVariant::line);

/// Piecewise kernel with m-parity dispatch.
cplx eval_D(cplx l, double phi1, double phi2, bool primed);

/// Two-exponential form, evaluated on the lift with (φ₁-φ₂)/2 in (0, π).
cplx eval_D_alt(cplx l, double phi1, double phi2, bool primed);

enum class KappaSign {
  unsigned_kappa,  // diagram sign only in the primed kernel
  signed_both      // diagram sign in both kernels
};

struct KappaOptions {
  KappaSign sign = KappaSign::unsigned_kappa;
  XiVariant xi = XiVariant::line;
};

cplx eval_kappa(int n, int k, const Signature& sig, const CartanPoint& a, bool primed, KappaOptions options = {});

/// Exponential expansion of κ_k valid in the chamber containing `a`.
ExpPoly kappa_local(int n, int k, const Signature& sig, const CartanPoint& a, bool primed,
                    KappaOptions options = {});

/// X_j (1-based) on the chart of F's domain.
ExpPoly apply_X(int j, const ExpPoly& f);
ExpPoly apply_diff_vandermonde(const ExpPoly& f);
/// Σ_j X_j^degree applied to F.
ExpPoly apply_power_sum(int degree, const ExpPoly& f);

cplx vandermonde(std::span<const cplx> values);
cplx delta_cl(const Signature& sig);

/// Π_{p<q} sign sin((φ_p - φ_q)/2) with angles in (-π, π].
int epsilon_sign(std::span<const double> phi);

/// ε_k(a)·(det a)^{-(n-1)/2} with the half power taken on (-π, π] representatives.
cplx averaging_prefactor(int n, const CartanPoint& a);

struct GlueingReport {
  int order = 0;
  std::vector<cplx> upper_residuals;  // u_j(+) - (-1)^{j+1} u_j(-)
  std::vector<cplx> lower_residuals;  // [τ^j]F_k - i(-1)^{j/2} u_j(+) (even j), [τ^j]F_k (odd j)
  double max_residual() const;
};

/// Compares Taylor data across the wall t_{k+1} = 0 between A_{k+1} and A_k.
/// `base` is a point of A_{k+1}; its t_{k+1} entry is ignored.
GlueingReport check_glueing(const ExpPoly& lower, const ExpPoly& upper_plus, const ExpPoly& upper_minus,
                            const CartanPoint& base, int order);
/// As above with the t < 0 side obtained from F(-t) = -F(t).
GlueingReport check_glueing(const ExpPoly& lower, const ExpPoly& upper_plus, const CartanPoint& base, int order);

}  // namespace specsep
