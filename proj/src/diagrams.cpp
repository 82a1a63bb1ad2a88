#include "specsep/diagrams.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace specsep {

namespace {

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

struct Arc {
  int top;
  int bottom;
};

int crossings(const std::vector<Arc>& a, const std::vector<Arc>& b, bool same) {
  int count = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = same ? i + 1 : 0; j < b.size(); ++j)
      if ((a[i].top - b[j].top) * (a[i].bottom - b[j].bottom) < 0) ++count;
  return count;
}

int parity_sign(int count) { return count % 2 == 0 ? 1 : -1; }

class Enumerator {
 public:
  Enumerator(int n, int r, int k) : n_(n), r_(r), k_(k) {}

  std::vector<Diagram> run() {
    std::vector<int> l_of_z;
    std::vector<char> used_l(static_cast<std::size_t>(r_) + 1, 0);
    choose_blocks(l_of_z, used_l);
    return std::move(out_);
  }

 private:
  void choose_blocks(std::vector<int>& l_of_z, std::vector<char>& used_l) {
    if (static_cast<int>(l_of_z.size()) == k_) {
      std::vector<BlockArc> blocks;
      std::vector<int> free_l;
      for (int z = 1; z <= k_; ++z) blocks.push_back({l_of_z[static_cast<std::size_t>(z - 1)], z});
      for (int q = 1; q <= r_; ++q)
        if (!used_l[static_cast<std::size_t>(q)]) free_l.push_back(q);
      std::vector<char> used_box(static_cast<std::size_t>(n_ - 2 * k_) + 1, 0);
      std::vector<PairArc> pairs;
      choose_pairs(blocks, free_l, 0, pairs, used_box);
      return;
    }
    for (int q = 1; q <= r_; ++q) {
      if (used_l[static_cast<std::size_t>(q)]) continue;
      used_l[static_cast<std::size_t>(q)] = 1;
      l_of_z.push_back(q);
      choose_blocks(l_of_z, used_l);
      l_of_z.pop_back();
      used_l[static_cast<std::size_t>(q)] = 0;
    }
  }

  void choose_pairs(const std::vector<BlockArc>& blocks, const std::vector<int>& free_l, std::size_t idx,
                    std::vector<PairArc>& pairs, std::vector<char>& used_box) {
    const int boxes = n_ - 2 * k_;
    if (idx == free_l.size()) {
      std::vector<int> free_boxes;
      for (int b = 1; b <= boxes; ++b)
        if (!used_box[static_cast<std::size_t>(b)]) free_boxes.push_back(b);
      do {
        std::vector<CircleArc> circles;
        for (std::size_t c = 0; c < free_boxes.size(); ++c)
          circles.push_back({static_cast<int>(c) + 1, free_boxes[c]});
        out_.emplace_back(n_, r_, k_, circles, pairs, blocks);
      } while (std::next_permutation(free_boxes.begin(), free_boxes.end()));
      return;
    }
    for (int lo = 1; lo <= boxes; ++lo) {
      if (used_box[static_cast<std::size_t>(lo)]) continue;
      for (int hi = lo + 1; hi <= boxes; ++hi) {
        if (used_box[static_cast<std::size_t>(hi)]) continue;
        used_box[static_cast<std::size_t>(lo)] = used_box[static_cast<std::size_t>(hi)] = 1;
        pairs.push_back({free_l[idx], lo, hi});
        choose_pairs(blocks, free_l, idx + 1, pairs, used_box);
        pairs.pop_back();
        used_box[static_cast<std::size_t>(lo)] = used_box[static_cast<std::size_t>(hi)] = 0;
      }
    }
  }

  int n_, r_, k_;
  std::vector<Diagram> out_;
};

}  // namespace

void check_diagram_range(int n, int r, int k) {
  if (n < 1) throw std::invalid_argument("diagram: n must be positive");
  if (k < 0 || k > r || r > n / 2)
    throw std::invalid_argument("diagram: require 0 <= k <= r <= floor(n/2)");
}

Diagram::Diagram(int n, int r, int k, std::vector<CircleArc> circle_arcs, std::vector<PairArc> pair_arcs,
                 std::vector<BlockArc> block_arcs)
    : n_(n), r_(r), k_(k), circle_arcs_(std::move(circle_arcs)), pair_arcs_(std::move(pair_arcs)),
      block_arcs_(std::move(block_arcs)) {
  check_diagram_range(n, r, k);
  if (static_cast<int>(circle_arcs_.size()) != n - 2 * r || static_cast<int>(pair_arcs_.size()) != r - k ||
      static_cast<int>(block_arcs_.size()) != k)
    throw std::invalid_argument("diagram: wrong number of arcs");
  std::sort(circle_arcs_.begin(), circle_arcs_.end());
  std::sort(pair_arcs_.begin(), pair_arcs_.end());
  std::sort(block_arcs_.begin(), block_arcs_.end());

  const int boxes = n - 2 * k;
  std::vector<int> box_use(static_cast<std::size_t>(boxes) + 1, 0);
  std::vector<int> l_use(static_cast<std::size_t>(r) + 1, 0);
  std::vector<int> z_use(static_cast<std::size_t>(k) + 1, 0);
  auto use = [](std::vector<int>& v, int i, const char* what) {
    if (i < 1 || i >= static_cast<int>(v.size()) || v[static_cast<std::size_t>(i)]++)
      throw std::invalid_argument(std::string("diagram: invalid or repeated ") + what);
  };
  for (std::size_t i = 0; i < circle_arcs_.size(); ++i) {
    if (circle_arcs_[i].circle != static_cast<int>(i) + 1) throw std::invalid_argument("diagram: circles must be 1..n-2r");
    use(box_use, circle_arcs_[i].box, "box");
  }
  for (const auto& a : pair_arcs_) {
    if (a.lo >= a.hi) throw std::invalid_argument("diagram: pair arc needs lo < hi");
    use(box_use, a.lo, "box");
    use(box_use, a.hi, "box");
    use(l_use, a.l, "l index");
  }
  for (const auto& a : block_arcs_) {
    use(l_use, a.l, "l index");
    use(z_use, a.z, "z index");
  }
}

Permutation Diagram::slot_permutation() const {
  const int white_circles = n_ - 2 * r_;
  const int white_boxes = n_ - 2 * k_;
  Permutation perm(static_cast<std::size_t>(n_));
  for (const auto& a : circle_arcs_) perm[static_cast<std::size_t>(a.circle - 1)] = a.box;
  for (const auto& a : pair_arcs_) {
    perm[static_cast<std::size_t>(white_circles + 2 * a.l - 2)] = a.lo;
    perm[static_cast<std::size_t>(white_circles + 2 * a.l - 1)] = a.hi;
  }
  for (const auto& a : block_arcs_) {
    perm[static_cast<std::size_t>(white_circles + 2 * a.l - 2)] = white_boxes + 2 * a.z - 1;
    perm[static_cast<std::size_t>(white_circles + 2 * a.l - 1)] = white_boxes + 2 * a.z;
  }
  return perm;
}

std::vector<Diagram> enumerate_diagrams(int n, int r, int k) {
  check_diagram_range(n, r, k);
  auto out = Enumerator(n, r, k).run();
  std::sort(out.begin(), out.end());
  return out;
}

long long diagram_count(int n, int r, int k) {
  check_diagram_range(n, r, k);
  long long count = factorial(r) / factorial(r - k) * factorial(n - 2 * k);
  for (int i = 0; i < r - k; ++i) count /= 2;
  return count;
}

int diagram_sign(const Diagram& d) { return permutation_sign(d.slot_permutation()); }

CrossingParities crossing_parities(const Diagram& d) {
  const int white_circles = d.n() - 2 * d.r();
  std::vector<Arc> circle, pair;
  for (const auto& a : d.circle_arcs()) circle.push_back({a.circle, a.box});
  for (const auto& a : d.pair_arcs()) {
    pair.push_back({white_circles + 2 * a.l - 1, a.lo});
    pair.push_back({white_circles + 2 * a.l, a.hi});
  }
  return {parity_sign(crossings(circle, circle, true)), parity_sign(crossings(circle, pair, false)),
          parity_sign(crossings(pair, pair, true))};
}

bool is_circ(const Diagram& d) {
  const auto& arcs = d.circle_arcs();
  for (std::size_t i = 1; i < arcs.size(); ++i)
    if (arcs[i - 1].box > arcs[i].box) return false;
  return true;
}

std::pair<int, int> epsilon_parities(const Diagram& d) {
  if (!is_circ(d)) throw std::invalid_argument("epsilon_parities: diagram has crossing circle arcs");
  const auto p = crossing_parities(d);
  return {p.circle_pair, p.pair_pair};
}

Diagram to_circ(const Diagram& d) {
  std::vector<int> boxes;
  for (const auto& a : d.circle_arcs()) boxes.push_back(a.box);
  std::sort(boxes.begin(), boxes.end());
  std::vector<CircleArc> arcs;
  for (std::size_t i = 0; i < boxes.size(); ++i) arcs.push_back({static_cast<int>(i) + 1, boxes[i]});
  return Diagram(d.n(), d.r(), d.k(), arcs, d.pair_arcs(), d.block_arcs());
}

SquareDiagram to_square(const Diagram& d) {
  if (!is_circ(d)) throw std::invalid_argument("to_square: diagram has crossing circle arcs");
  SquareDiagram sq{d.n(), d.r(), d.k(), {}, {}};
  for (const auto& a : d.pair_arcs()) sq.chords.emplace_back(a.lo, a.hi);
  for (const auto& a : d.circle_arcs()) sq.circle_boxes.push_back(a.box);
  std::sort(sq.chords.begin(), sq.chords.end());
  std::sort(sq.circle_boxes.begin(), sq.circle_boxes.end());
  return sq;
}

std::map<SquareDiagram, long long> square_preimage_counts(int n, int r, int k) {
  std::map<SquareDiagram, long long> counts;
  for (const auto& d : enumerate_diagrams(n, r, k))
    if (is_circ(d)) ++counts[to_square(d)];
  return counts;
}

}  // namespace specsep
