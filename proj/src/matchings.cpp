#include "specsep/matchings.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace specsep {

namespace {

void enumerate_rec(std::vector<int>& remaining, std::vector<std::pair<int, int>>& pairs,
                   std::optional<int> singleton, int p, std::vector<Matching>& out) {
  if (remaining.empty()) {
    out.emplace_back(p, pairs, singleton);
    return;
  }
  // remaining is kept sorted ascending; pair its largest element with each other one
  const int top = remaining.back();
  remaining.pop_back();
  for (std::size_t i = 0; i < remaining.size(); ++i) {
    const int partner = remaining[i];
    remaining.erase(remaining.begin() + static_cast<long>(i));
    pairs.emplace_back(top, partner);
    enumerate_rec(remaining, pairs, singleton, p, out);
    pairs.pop_back();
    remaining.insert(remaining.begin() + static_cast<long>(i), partner);
  }
  remaining.push_back(top);
}

bool strictly_between(int x, int lo, int hi) { return lo < x && x < hi; }

}  // namespace

Matching::Matching(int p, std::vector<std::pair<int, int>> pairs, std::optional<int> singleton)
    : p_(p), pairs_(std::move(pairs)), singleton_(singleton) {
  if (p < 1) throw std::invalid_argument("matching size must be positive");
  if (static_cast<int>(pairs_.size()) != p / 2)
    throw std::invalid_argument("matching must have floor(p/2) pairs");
  if (singleton_.has_value() != (p % 2 == 1))
    throw std::invalid_argument("singleton present iff p is odd");
  std::vector<int> seen(static_cast<std::size_t>(p) + 1, 0);
  auto mark = [&](int v) {
    if (v < 1 || v > p) throw std::invalid_argument("matching index out of range: " + std::to_string(v));
    if (seen[static_cast<std::size_t>(v)]++) throw std::invalid_argument("matching index repeated: " + std::to_string(v));
  };
  for (auto& [a, b] : pairs_) {
    mark(a);
    mark(b);
    if (a < b) std::swap(a, b);
  }
  if (singleton_) mark(*singleton_);
  std::sort(pairs_.begin(), pairs_.end(), std::greater<>());
}

bool Matching::contains_pair(int a, int b) const {
  if (a < b) std::swap(a, b);
  return std::find(pairs_.begin(), pairs_.end(), std::pair{a, b}) != pairs_.end();
}

std::vector<Matching> enumerate_matchings(int p) {
  if (p < 1) throw std::invalid_argument("enumerate_matchings: p must be positive");
  std::vector<Matching> out;
  out.reserve(static_cast<std::size_t>(matching_count(p)));
  std::vector<std::pair<int, int>> pairs;
  if (p % 2 == 0) {
    std::vector<int> remaining(static_cast<std::size_t>(p));
    std::iota(remaining.begin(), remaining.end(), 1);
    enumerate_rec(remaining, pairs, std::nullopt, p, out);
  } else {
    for (int s = 1; s <= p; ++s) {
      std::vector<int> remaining;
      for (int v = 1; v <= p; ++v)
        if (v != s) remaining.push_back(v);
      enumerate_rec(remaining, pairs, s, p, out);
    }
  }
  std::sort(out.begin(), out.end(), [](const Matching& a, const Matching& b) {
    if (a.pairs() != b.pairs()) return a.pairs() < b.pairs();
    return a.singleton() < b.singleton();
  });
  return out;
}

Matching standard_matching(int p) {
  if (p < 1) throw std::invalid_argument("standard_matching: p must be positive");
  std::vector<std::pair<int, int>> pairs;
  for (int top = p; top >= 2; top -= 2) pairs.emplace_back(top, top - 1);
  std::optional<int> singleton;
  if (p % 2 == 1) singleton = 1;
  return Matching(p, std::move(pairs), singleton);
}

long long matching_count(int p) {
  if (p < 1) throw std::invalid_argument("matching_count: p must be positive");
  long long count = 1;
  for (int q = (p % 2 == 0 ? p : p - 1); q >= 2; q -= 2) count *= q - 1;
  return p % 2 == 0 ? count : count * p;
}

int parity(const Matching& m) {
  const auto& pairs = m.pairs();
  int crossings = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [hi1, lo1] = pairs[i];
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      const auto [hi2, lo2] = pairs[j];
      if (strictly_between(lo2, lo1, hi1) != strictly_between(hi2, lo1, hi1)) ++crossings;
    }
    if (m.singleton() && strictly_between(*m.singleton(), lo1, hi1)) ++crossings;
  }
  return crossings % 2 == 0 ? 1 : -1;
}

long long parity_sum(int p) {
  long long sum = 0;
  for (const auto& m : enumerate_matchings(p)) sum += parity(m);
  return sum;
}

bool is_permutation(const Permutation& sigma) {
  std::vector<char> seen(sigma.size() + 1, 0);
  for (int v : sigma) {
    if (v < 1 || v > static_cast<int>(sigma.size()) || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return true;
}

int permutation_sign(const Permutation& sigma) {
  if (!is_permutation(sigma)) throw std::invalid_argument("not a permutation");
  std::vector<char> visited(sigma.size(), 0);
  int sign = 1;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (visited[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !visited[j]; j = static_cast<std::size_t>(sigma[j] - 1)) {
      visited[j] = 1;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

Matching act(const Permutation& sigma, const Matching& m) {
  if (static_cast<int>(sigma.size()) != m.size() || !is_permutation(sigma))
    throw std::invalid_argument("act: sigma must be a bijection of {1..p}");
  auto image = [&](int v) { return sigma[static_cast<std::size_t>(v - 1)]; };
  std::vector<std::pair<int, int>> pairs;
  for (auto [a, b] : m.pairs()) pairs.emplace_back(image(a), image(b));
  std::optional<int> singleton;
  if (m.singleton()) singleton = image(*m.singleton());
  return Matching(m.size(), std::move(pairs), singleton);
}

Matching involution_J(const Matching& m) {
  const int p = m.size();
  if (p % 2 != 0) throw std::invalid_argument("involution_J: defined for even p only");
  for (int top = p; top >= 2; top -= 2) {
    if (!m.contains_pair(top, top - 1)) {
      Permutation swap(static_cast<std::size_t>(p));
      std::iota(swap.begin(), swap.end(), 1);
      std::swap(swap[static_cast<std::size_t>(top - 1)], swap[static_cast<std::size_t>(top - 2)]);
      return act(swap, m);
    }
  }
  return m;
}

int sigma_zeta0_sign(const Permutation& sigma) {
  int sign = permutation_sign(sigma);
  const int p = static_cast<int>(sigma.size());
  auto image = [&](int v) { return sigma[static_cast<std::size_t>(v - 1)]; };
  for (int j = 0; p - 2 * j - 1 >= 1; ++j)
    if (image(p - 2 * j) < image(p - 2 * j - 1)) sign = -sign;
  return sign;
}

}  // namespace specsep
