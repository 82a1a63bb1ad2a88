#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "specsep/kernels.hpp"

namespace specsep {

namespace {

constexpr cplx kI{0.0, 1.0};

/// Taylor coefficients in line `line` of F at the given point.
std::vector<cplx> line_taylor(const ExpPoly& f, std::span<const double> angles, std::span<const double> lines,
                              std::size_t line, int order) {
  std::vector<cplx> out(static_cast<std::size_t>(order + 1), 0.0);
  for (const auto& term : f.terms()) {
    cplx arg{0.0};
    for (std::size_t i = 0; i < angles.size(); ++i) arg += term.freq[i] * angles[i];
    cplx scale = term.coeff * std::exp(kI * arg);
    for (std::size_t j = 0; j < lines.size(); ++j)
      if (j != line) scale *= term.lines[j].evaluate(lines[j]);
    const auto tay = term.lines[line].taylor(order);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += scale * tay[j];
  }
  return out;
}

/// Taylor coefficients in τ of F_k with its last two white angles set to θ ± τ/2.
std::vector<cplx> wall_taylor(const ExpPoly& f, std::span<const double> angles, std::span<const double> lines,
                              std::size_t first, int order) {
  std::vector<cplx> out(static_cast<std::size_t>(order + 1), 0.0);
  for (const auto& term : f.terms()) {
    cplx arg{0.0};
    for (std::size_t i = 0; i < angles.size(); ++i) arg += term.freq[i] * angles[i];
    cplx scale = term.coeff * std::exp(kI * arg);
    for (std::size_t j = 0; j < lines.size(); ++j) scale *= term.lines[j].evaluate(lines[j]);
    const cplx rate = kI * (term.freq[first] - term.freq[first + 1]) / 2.0;
    cplx power = scale;
    for (std::size_t j = 0; j < out.size(); ++j) {
      out[j] += power;
      power *= rate / static_cast<double>(j + 1);
    }
  }
  return out;
}

}  // namespace

double GlueingReport::max_residual() const {
  double m = 0.0;
  for (const auto& v : upper_residuals) m = std::max(m, std::abs(v));
  for (const auto& v : lower_residuals) m = std::max(m, std::abs(v));
  return m;
}

GlueingReport check_glueing(const ExpPoly& lower, const ExpPoly& upper_plus, const ExpPoly& upper_minus,
                            const CartanPoint& base, int order) {
  if (order < 0) throw std::invalid_argument("glueing order must be non-negative");
  const int k = base.k - 1;
  if (k < 0) throw std::invalid_argument("glueing base must lie on a chart with at least one block");
  const int n = static_cast<int>(base.phi.size()) + 2 * base.k;
  if (base.theta.size() != static_cast<std::size_t>(base.k) || base.t.size() != static_cast<std::size_t>(base.k))
    throw std::invalid_argument("glueing base has inconsistent block data");
  if (upper_plus.domain() != cartan_domain(n, k + 1) || upper_minus.domain() != cartan_domain(n, k + 1) ||
      lower.domain() != cartan_domain(n, k))
    throw std::invalid_argument("glueing inputs live on the wrong charts");

  std::vector<double> up_lines = base.t;
  up_lines.back() = 0.0;
  const auto up_angles = base.angles();
  const auto line = static_cast<std::size_t>(k);
  const auto plus = line_taylor(upper_plus, up_angles, up_lines, line, order);
  const auto minus = line_taylor(upper_minus, up_angles, up_lines, line, order);

  const double theta = base.theta.back();
  std::vector<double> low_angles = base.phi;
  const std::size_t first = low_angles.size();
  low_angles.push_back(theta);
  low_angles.push_back(theta);
  low_angles.insert(low_angles.end(), base.theta.begin(), base.theta.end() - 1);
  const std::vector<double> low_lines(base.t.begin(), base.t.end() - 1);
  const auto wall = wall_taylor(lower, low_angles, low_lines, first, order);

  GlueingReport report;
  report.order = order;
  for (int j = 0; j <= order; ++j) {
    const auto i = static_cast<std::size_t>(j);
    const double odd_sign = (j % 2 == 0) ? -1.0 : 1.0;  // (-1)^{j+1}
    report.upper_residuals.push_back(plus[i] - odd_sign * minus[i]);
    if (j % 2 == 0) {
      const double s = (j / 2) % 2 == 0 ? 1.0 : -1.0;
      report.lower_residuals.push_back(wall[i] - kI * s * plus[i]);
    } else {
      report.lower_residuals.push_back(wall[i]);
    }
  }
  return report;
}

GlueingReport check_glueing(const ExpPoly& lower, const ExpPoly& upper_plus, const CartanPoint& base, int order) {
  const std::size_t line = base.t.empty() ? 0 : base.t.size() - 1;
  return check_glueing(lower, upper_plus, upper_plus.reflect_line(line) * -1.0, base, order);
}

}  // namespace specsep
