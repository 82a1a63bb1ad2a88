#pragma once

#include <functional>
#include <span>
#include <vector>

#include "specsep/domain.hpp"

namespace specsep {

using ComplexIntegrand = std::function<cplx(double)>;

struct QuadResult {
  cplx value{0.0};
  double error = 0.0;
};

/// Adaptive Gauss-Kronrod on a finite interval.
QuadResult integrate(const ComplexIntegrand& f, double a, double b, double rel_tol = 1e-10, int max_depth = 15);

/// Integral over [0, ∞) of f whose tail decays like an even power series in 1/λ.
/// The tail beyond `cutoff` is fitted from samples on [cutoff/2, cutoff] with
/// terms λ^{-2}, ..., λ^{-2·tail_terms}; the error estimate includes the fit spread.
struct TailResult {
  cplx head{0.0};
  cplx tail{0.0};
  double error = 0.0;
  cplx total() const { return head + tail; }
};
TailResult integrate_algebraic_tail(const ComplexIntegrand& f, double cutoff, int tail_terms = 3,
                                    double rel_tol = 1e-10);

/// Richardson extrapolation of values at step sizes h_i, assuming error
/// c_1 h^{p} + c_2 h^{2p} + ... ; returns the fully extrapolated value.
cplx richardson(std::span<const double> h, std::span<const cplx> values, double order);

}  // namespace specsep
