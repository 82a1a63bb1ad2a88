#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "specsep/matchings.hpp"

using namespace specsep;

namespace {

using PairSet = std::set<std::pair<int, int>>;

/// Brute force: every permutation read off in consecutive pairs, deduplicated.
std::set<std::pair<PairSet, int>> brute_matchings(int p) {
  std::vector<int> perm(static_cast<std::size_t>(p));
  std::iota(perm.begin(), perm.end(), 1);
  std::set<std::pair<PairSet, int>> out;
  do {
    PairSet pairs;
    for (int i = 0; i + 1 < p; i += 2) pairs.insert(std::minmax(perm[i], perm[i + 1]));
    out.insert({pairs, p % 2 ? perm.back() : 0});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

/// Crossing count by walking the line left to right and tracking open arcs.
int crossing_sign(int p, const PairSet& pairs, int singleton) {
  std::vector<int> partner(static_cast<std::size_t>(p) + 1, 0);
  for (auto [a, b] : pairs) partner[a] = b, partner[b] = a;
  int crossings = 0;
  for (auto [a, b] : pairs)
    for (auto [c, d] : pairs)
      if (a < c && c < b && b < d) ++crossings;
  if (singleton)
    for (auto [a, b] : pairs)
      if (a < singleton && singleton < b) ++crossings;
  return crossings % 2 ? -1 : 1;
}

PairSet as_set(const Matching& m) {
  PairSet s;
  for (auto [a, b] : m.pairs()) s.insert(std::minmax(a, b));
  return s;
}

/// (p-1)!! for even p, p!! for odd p.
long long double_factorial_count(int p) {
  long long c = 1;
  for (int q = (p % 2 ? p : p - 1); q > 1; q -= 2) c *= q;
  return c;
}

}  // namespace

TEST_CASE("enumeration agrees with brute force") {
  for (int p = 1; p <= 8; ++p) {
    const auto ms = enumerate_matchings(p);
    const auto oracle = brute_matchings(p);
    REQUIRE(ms.size() == oracle.size());
    REQUIRE(static_cast<long long>(ms.size()) == matching_count(p));
    std::set<std::pair<PairSet, int>> got;
    for (const auto& m : ms) got.insert({as_set(m), m.singleton().value_or(0)});
    CHECK(got == oracle);
  }
}

TEST_CASE("enumeration counts") {
  CHECK(enumerate_matchings(2).size() == 1);
  CHECK(enumerate_matchings(4).size() == 3);
  CHECK(enumerate_matchings(5).size() == 15);
  CHECK(enumerate_matchings(7).size() == 105);
  // odd p: p choices of singleton times (p-2)!!
  for (int p = 1; p <= 12; ++p) {
    const long long expect = p % 2 ? p * double_factorial_count(p - 1) : double_factorial_count(p);
    CHECK(matching_count(p) == expect);
  }
  // recursion through forgetting the top element
  for (int p = 3; p <= 12; p += 2) CHECK(matching_count(p) == matching_count(p - 1) + (p - 1) * matching_count(p - 2));
  CHECK_THROWS_AS(enumerate_matchings(0), std::invalid_argument);
}

TEST_CASE("enumeration order is canonical") {
  const auto ms = enumerate_matchings(6);
  CHECK(std::is_sorted(ms.begin(), ms.end(), [](const Matching& a, const Matching& b) { return a.pairs() < b.pairs(); }));
  CHECK(ms == enumerate_matchings(6));
  const auto single = enumerate_matchings(2);
  CHECK(single.front().pairs() == std::vector<std::pair<int, int>>{{2, 1}});
}

TEST_CASE("parity matches crossing oracle") {
  for (int p = 1; p <= 8; ++p)
    for (const auto& m : enumerate_matchings(p))
      CHECK(parity(m) == crossing_sign(p, as_set(m), m.singleton().value_or(0)));
  CHECK(parity(Matching(4, {{4, 2}, {3, 1}})) == -1);
  CHECK(parity(Matching(4, {{4, 1}, {3, 2}})) == 1);
  for (int p = 1; p <= 11; ++p) CHECK(parity(standard_matching(p)) == 1);
}

TEST_CASE("parity sum is one") {
  CHECK(parity_sum(2) == 1);
  CHECK(parity_sum(4) == 1);
  CHECK(parity_sum(7) == 1);
  for (int p = 1; p <= 10; ++p) {
    long long direct = 0;
    for (const auto& m : enumerate_matchings(p)) direct += crossing_sign(p, as_set(m), m.singleton().value_or(0));
    CHECK(direct == 1);
    CHECK(parity_sum(p) == 1);
  }
}

TEST_CASE("matching invariants are enforced") {
  CHECK_THROWS_AS(Matching(4, {{4, 3}, {3, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Matching(3, {{3, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(Matching(2, {{2, 1}}, 1), std::invalid_argument);
  CHECK_THROWS_AS(Matching(4, {{5, 1}, {3, 2}}), std::invalid_argument);
  CHECK(Matching(4, {{1, 3}, {2, 4}}) == Matching(4, {{4, 2}, {3, 1}}));
}

TEST_CASE("group action") {
  const Matching z4 = standard_matching(4);
  CHECK(act({1, 2, 3, 4}, z4) == z4);
  CHECK(act({2, 1}, standard_matching(2)) == standard_matching(2));
  CHECK(act({1, 3, 2, 4}, z4) == Matching(4, {{4, 2}, {3, 1}}));
  CHECK_THROWS_AS(act({1, 1, 3, 4}, z4), std::invalid_argument);
  CHECK_THROWS_AS(act({1, 2, 3}, z4), std::invalid_argument);

  // action is a group action: act(σ, act(τ, ζ)) = act(σ∘τ, ζ)
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int p = 2 + trial % 7;
    Permutation s(static_cast<std::size_t>(p)), t(static_cast<std::size_t>(p));
    std::iota(s.begin(), s.end(), 1);
    std::iota(t.begin(), t.end(), 1);
    std::shuffle(s.begin(), s.end(), rng);
    std::shuffle(t.begin(), t.end(), rng);
    Permutation st(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) st[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(t[static_cast<std::size_t>(i)] - 1)];
    const auto ms = enumerate_matchings(p);
    const auto& z = ms[static_cast<std::size_t>(trial) % ms.size()];
    CHECK(act(s, act(t, z)) == act(st, z));
  }
}

TEST_CASE("permutation sign by transposition counting") {
  for (int p = 1; p <= 6; ++p) {
    Permutation s(static_cast<std::size_t>(p));
    std::iota(s.begin(), s.end(), 1);
    do {
      // cycle decomposition: sign = (-1)^(p - cycles)
      std::vector<bool> seen(static_cast<std::size_t>(p), false);
      int cycles = 0;
      for (int i = 0; i < p; ++i) {
        if (seen[static_cast<std::size_t>(i)]) continue;
        ++cycles;
        for (int j = i; !seen[static_cast<std::size_t>(j)]; j = s[static_cast<std::size_t>(j)] - 1) seen[static_cast<std::size_t>(j)] = true;
      }
      CHECK(permutation_sign(s) == ((p - cycles) % 2 ? -1 : 1));
    } while (std::next_permutation(s.begin(), s.end()));
  }
  CHECK_FALSE(is_permutation({1, 1}));
  CHECK(is_permutation({2, 3, 1}));
}

TEST_CASE("involution J") {
  const Matching z0 = standard_matching(4);
  CHECK(involution_J(z0) == z0);
  CHECK(involution_J(Matching(4, {{4, 2}, {3, 1}})) == Matching(4, {{4, 1}, {3, 2}}));
  CHECK_THROWS_AS(involution_J(standard_matching(3)), std::invalid_argument);
  for (int p = 2; p <= 10; p += 2) {
    int fixed = 0;
    for (const auto& m : enumerate_matchings(p)) {
      const Matching j = involution_J(m);
      CHECK(involution_J(j) == m);
      if (j == m) {
        ++fixed;
        CHECK(m == standard_matching(p));
      } else {
        CHECK(parity(j) == -parity(m));
      }
    }
    CHECK(fixed == 1);
  }
}

TEST_CASE("sigma zeta0 sign formula") {
  CHECK(sigma_zeta0_sign({1, 2, 3}) == 1);
  CHECK(sigma_zeta0_sign({2, 1}) == 1);
  for (int p = 1; p <= 7; ++p) {
    Permutation s(static_cast<std::size_t>(p));
    std::iota(s.begin(), s.end(), 1);
    do {
      const Matching image = act(s, standard_matching(p));
      CHECK(sigma_zeta0_sign(s) == crossing_sign(p, as_set(image), image.singleton().value_or(0)));
    } while (std::next_permutation(s.begin(), s.end()));
  }
}
