#pragma once

#include <map>
#include <utility>
#include <vector>

#include "specsep/matchings.hpp"

namespace specsep {

/// Arc from the white circle c_circle to the white box φ_box.
struct CircleArc {
  int circle;
  int box;
  friend auto operator<=>(const CircleArc&, const CircleArc&) = default;
};

/// Arcs l_q → φ_lo and l̄_q → φ_hi with lo < hi.
struct PairArc {
  int l;
  int lo;
  int hi;
  friend auto operator<=>(const PairArc&, const PairArc&) = default;
};

/// Non-crossing arcs l_q → z_γ and l̄_q → -z̄_γ.
struct BlockArc {
  int l;
  int z;
  friend auto operator<=>(const BlockArc&, const BlockArc&) = default;
};

/// An arc diagram of Ω(r,k) for GL(n).
///
/// Upper row: n-2r white circles then the black pairs (l_1, l̄_1), ..., (l_r, l̄_r).
/// Lower row: n-2k white boxes then the black pairs (z_1, -z̄_1), ..., (z_k, -z̄_k).
class Diagram {
 public:
  Diagram(int n, int r, int k, std::vector<CircleArc> circle_arcs, std::vector<PairArc> pair_arcs,
          std::vector<BlockArc> block_arcs);

  int n() const { return n_; }
  int r() const { return r_; }
  int k() const { return k_; }
  const std::vector<CircleArc>& circle_arcs() const { return circle_arcs_; }
  const std::vector<PairArc>& pair_arcs() const { return pair_arcs_; }
  const std::vector<BlockArc>& block_arcs() const { return block_arcs_; }

  /// Box position reached from each circle position, both numbered 1..n.
  Permutation slot_permutation() const;

  friend auto operator<=>(const Diagram&, const Diagram&) = default;

 private:
  int n_, r_, k_;
  std::vector<CircleArc> circle_arcs_;  // sorted by circle
  std::vector<PairArc> pair_arcs_;      // sorted by l
  std::vector<BlockArc> block_arcs_;    // sorted by l
};

void check_diagram_range(int n, int r, int k);

std::vector<Diagram> enumerate_diagrams(int n, int r, int k);

/// Closed-form size of Ω(r,k).
long long diagram_count(int n, int r, int k);

int diagram_sign(const Diagram& d);

struct CrossingParities {
  int circle_circle;  // among circle arcs
  int circle_pair;    // between circle arcs and pair arcs
  int pair_pair;      // among pair arcs
};

CrossingParities crossing_parities(const Diagram& d);

/// Whether the circle arcs are order preserving (the diagram lies in Ω°).
bool is_circ(const Diagram& d);

/// (ε₁, ε₂): circle/pair crossing parity and pair/pair crossing parity.
std::pair<int, int> epsilon_parities(const Diagram& d);

Diagram to_circ(const Diagram& d);

struct SquareDiagram {
  int n, r, k;
  std::vector<std::pair<int, int>> chords;  // (lo, hi), lo carries the cotangent
  std::vector<int> circle_boxes;            // u_1 < ... < u_{n-2r}
  friend auto operator<=>(const SquareDiagram&, const SquareDiagram&) = default;
};

SquareDiagram to_square(const Diagram& d);

/// For each square diagram, the number of Ω° diagrams mapping onto it.
std::map<SquareDiagram, long long> square_preimage_counts(int n, int r, int k);

}  // namespace specsep
