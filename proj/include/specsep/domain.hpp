#pragma once

#include <complex>
#include <string>
#include <vector>

namespace specsep {

using cplx = std::complex<double>;

/// Coordinates of a product of circles (angles mod 2π) and lines.
class Domain {
 public:
  Domain() = default;
  Domain(std::vector<std::string> angles, std::vector<std::string> lines);

  const std::vector<std::string>& angles() const { return angles_; }
  const std::vector<std::string>& lines() const { return lines_; }
  std::size_t angle_count() const { return angles_.size(); }
  std::size_t line_count() const { return lines_.size(); }

  /// Index of a named coordinate, or -1.
  int angle_index(const std::string& name) const;
  int line_index(const std::string& name) const;

  /// Concatenation; throws on name collisions.
  Domain concat(const Domain& other) const;

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  std::vector<std::string> angles_;
  std::vector<std::string> lines_;
};

/// Angles phi1..phi{n-2k}, theta1..theta{k}; lines t1..t{k}.
Domain cartan_domain(int n, int k);

}  // namespace specsep
