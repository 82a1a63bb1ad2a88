#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace specsep {

/// Permutation of {1..p} in one-line notation: perm[i-1] is the image of i.
using Permutation = std::vector<int>;

/// A partition of {1..p} into pairs plus a singleton when p is odd.
///
/// Pairs are stored larger index first and sorted descending by that index,
/// so two equal matchings compare equal element-wise.
class Matching {
 public:
  Matching(int p, std::vector<std::pair<int, int>> pairs,
           std::optional<int> singleton = std::nullopt);

  int size() const { return p_; }
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
  std::optional<int> singleton() const { return singleton_; }

  bool contains_pair(int a, int b) const;

  friend bool operator==(const Matching&, const Matching&) = default;
  friend auto operator<=>(const Matching& a, const Matching& b) {
    return a.pairs_ <=> b.pairs_;
  }

 private:
  int p_;
  std::vector<std::pair<int, int>> pairs_;
  std::optional<int> singleton_;
};

std::vector<Matching> enumerate_matchings(int p);

/// {p,p-1} ⊔ {p-2,p-3} ⊔ ..., ending with {1} for odd p.
Matching standard_matching(int p);

/// Number of matchings of a p-element set.
long long matching_count(int p);

/// (-1) raised to the number of interlacing pairs (a singleton interlaces a
/// pair when it lies strictly between the pair's endpoints).
int parity(const Matching& m);

long long parity_sum(int p);

bool is_permutation(const Permutation& sigma);
int permutation_sign(const Permutation& sigma);

Matching act(const Permutation& sigma, const Matching& m);

/// Parity-flipping involution on matchings of an even set; fixes only the
/// standard matching.
Matching involution_J(const Matching& m);

/// Closed-form sign of act(sigma, standard_matching(p)).
int sigma_zeta0_sign(const Permutation& sigma);

}  // namespace specsep
