#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "ramsey/core.hpp"
#include "ramsey/doubling.hpp"
#include "ramsey/uniform.hpp"

using namespace ramsey;

namespace {

std::vector<Rational> rs(const char* text) { return parse_rational_list(text); }

bool prefixes_ok(const std::vector<Rational>& xs, const std::vector<int>& perm) {
  Rational s = 0;
  for (int i : perm) {
    s += xs[static_cast<std::size_t>(i - 1)];
    if (s.sign() < 0 || !(s < Rational(1))) return false;
  }
  return true;
}

// All k! orders.
bool any_permutation(const std::vector<Rational>& xs) {
  std::vector<int> perm(xs.size());
  std::iota(perm.begin(), perm.end(), 1);
  do {
    if (prefixes_ok(xs, perm)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

TEST_CASE("doubling step") {
  CHECK(doubling_step(Rational(2, 7)) == Rational(4, 7));
  CHECK(doubling_step(Rational(4, 7)) == Rational(-6, 7));
  CHECK(doubling_step(Rational(-6, 7)) == Rational(2, 7));
  CHECK_THROWS_AS(doubling_step(Rational(1, 2)), BoundaryError);
  CHECK_THROWS_AS(doubling_step(Rational(-1, 2)), BoundaryError);
  CHECK_THROWS_AS(doubling_step(Rational(1)), DomainError);
}

TEST_CASE("orbits from seeds") {
  const auto o = orbit_from_seed(Rational(2, 7), 3);
  REQUIRE(o);
  CHECK(o->xs == rs("2/7,4/7,-6/7"));
  const auto z = orbit_from_seed(Rational(0), 5);
  REQUIRE(z);
  CHECK(z->xs == std::vector<Rational>(5, Rational(0)));
  CHECK_FALSE(orbit_from_seed(Rational(1, 3), 1).has_value());
  CHECK_THROWS_AS(orbit_from_seed(Rational(1, 4), 3), BoundaryError);
}

TEST_CASE("orbits from uniform colourings") {
  CHECK(orbit_from_uniform(3, 1).xs == rs("2/7,4/7,-6/7"));
  CHECK(orbit_from_uniform(3, 7).xs == std::vector<Rational>(3, Rational(0)));
  CHECK(orbit_from_uniform(4, 1).xs == rs("2/15,4/15,8/15,-14/15"));
  for (int k = 3; k <= 9; ++k) {
    const std::int64_t m = (std::int64_t{1} << (k + 1)) - 2;
    for (std::int64_t t = 1; t <= m; ++t) {
      const auto xs = orbit_from_uniform(k, t).xs;
      Rational sum = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        sum += xs[i];
        CHECK(doubling_step(xs[i]) == xs[(i + 1) % xs.size()]);
      }
      CHECK(sum == Rational(0));
    }
  }
}

TEST_CASE("prefix permutations") {
  const auto xs = rs("2/7,4/7,-6/7");
  const auto p = prefix_permutation(xs);
  REQUIRE(p);
  CHECK(*p == std::vector<int>{1, 2, 3});
  CHECK_FALSE(prefix_permutation(rs("3/5,3/5,3/5,-9/10,-9/10")).has_value());
  const auto zeros = std::vector<Rational>(4, Rational(0));
  CHECK(prefix_permutation(zeros) == std::optional<std::vector<int>>{{1, 2, 3, 4}});
  CHECK_THROWS_AS(prefix_permutation(rs("1/2,1/3")), PreconditionError);
}

TEST_CASE("prefix permutation matches exhaustive orders") {
  std::mt19937_64 g(8);
  for (int i = 0; i < 400; ++i) {
    const std::size_t k = 2 + g() % 5;
    std::vector<Rational> xs;
    Rational sum = 0;
    for (std::size_t j = 0; j + 1 < k; ++j) {
      xs.emplace_back(BigInt{static_cast<std::int64_t>(g() % 19) - 9}, BigInt{10});
      sum += xs.back();
    }
    xs.push_back(-sum);
    const auto p = prefix_permutation(xs);
    CHECK(p.has_value() == any_permutation(xs));
    if (p) {
      CHECK(prefixes_ok(xs, *p));
      auto sorted = *p;
      std::sort(sorted.begin(), sorted.end());
      std::vector<int> id(k);
      std::iota(id.begin(), id.end(), 1);
      CHECK(sorted == id);
    }
  }
}

TEST_CASE("small entries always admit a permutation") {
  std::mt19937_64 g(21);
  for (int i = 0; i < 500; ++i) {
    const std::size_t k = 2 + g() % 12;
    const std::int64_t den = 2 + static_cast<std::int64_t>(g() % 40);
    std::vector<Rational> xs;
    Rational sum = 0;
    // Pairs +a, -a keep the sum at zero and every |x| below 1/2.
    while (xs.size() + 1 < k) {
      const auto a = static_cast<std::int64_t>(g() % static_cast<std::uint64_t>((den - 1) / 2 + 1));
      if (2 * a >= den) continue;
      xs.emplace_back(BigInt{a}, BigInt{den});
      xs.emplace_back(BigInt{-a}, BigInt{den});
    }
    std::shuffle(xs.begin(), xs.end(), g);
    for (const auto& x : xs) sum += x;
    REQUIRE(sum == Rational(0));
    CHECK(prefix_permutation(xs).has_value());
  }
}

TEST_CASE("prefix permutations agree with the residue check") {
  for (int k = 3; k <= 10; ++k) {
    const std::int64_t m = (std::int64_t{1} << (k + 1)) - 2;
    for (std::int64_t t = 1; t <= m; ++t) {
      CHECK(prefix_permutation(orbit_from_uniform(k, t).xs).has_value() == residue_check(k, t).has_value());
    }
  }
}
