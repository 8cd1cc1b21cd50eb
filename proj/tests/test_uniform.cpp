#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "ramsey/uniform.hpp"

using namespace ramsey;

namespace {

// round(t p / q) for t p / q not a half-integer: floor((2 t p + q) / 2q).
std::int64_t nearest(std::int64_t t, const Rational& d) {
  const auto p = to_int64(d.num());
  const auto q = to_int64(d.den());
  return static_cast<std::int64_t>(floor_div(2 * t * p + q, 2 * q));
}

// Every start residue and every order of the jumps.
bool residue_reference(int k, std::int64_t t) {
  const std::int64_t m = (std::int64_t{1} << (k + 1)) - 2;
  const std::int64_t window = (std::int64_t{1} << k) - 1;
  std::vector<std::int64_t> jumps;
  for (int i = 1; i <= k; ++i) jumps.push_back(((std::int64_t{1} << i) % m) * (t % m) % m);
  std::sort(jumps.begin(), jumps.end());
  for (std::int64_t r = 0; r < window; ++r) {
    auto order = jumps;
    do {
      std::int64_t pos = r;
      bool ok = true;
      for (auto j : order) {
        pos = (pos + j) % m;
        ok = ok && pos < window;
      }
      if (ok) return true;
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return false;
}

}  // namespace

TEST_CASE("uniform colourings") {
  CHECK(uniform_colouring(1, 14).str() == "RRRRRRRBBBBBBB");
  CHECK(uniform_colouring(2, 8).str() == "RRBBRRBB");
  CHECK(uniform_colouring(3, 6).str() == "RBRBRB");
  CHECK_THROWS_AS(uniform_colouring(3, 8), DomainError);
  CHECK_THROWS_AS(uniform_colouring(0, 8), DomainError);
  for (std::int64_t t = 1; t <= 12; ++t) {
    const auto c = uniform_colouring(t, 2 * t * 5);
    CHECK(c.count(Colour::Red) == t * 5);
  }
}

TEST_CASE("jump counts") {
  const auto p3 = power_tuple(3);
  auto j = jump_counts(p3, 3);
  CHECK(j.counts == std::vector<std::int64_t>{2, 1, 0});
  CHECK(j.identity_holds);
  j = jump_counts(p3, 1);
  CHECK(j.counts == std::vector<std::int64_t>{1, 0, 0});
  CHECK(j.identity_holds);
  j = jump_counts(DistanceTuple::parse("1/2,1/4,1/4"), 2);
  REQUIRE(j.blocked.has_value());
  CHECK(*j.blocked == 1);
  CHECK(j.counts.empty());
}

TEST_CASE("jump identity for powers") {
  for (int k = 3; k <= 10; ++k) {
    const auto d = power_tuple(k);
    for (std::int64_t t = 1; t <= 2000; ++t) {
      const auto j = jump_counts(d, t);
      REQUIRE_FALSE(j.blocked.has_value());
      CHECK(j.identity_holds);
      for (std::size_t i = 0; i < d.k(); ++i) CHECK(j.counts[i] == nearest(t, d[i]));
    }
  }
}

TEST_CASE("residue instance") {
  const auto inst = ResidueInstance::make(3, 1);
  CHECK(inst.m == 14);
  CHECK(inst.window == 7);
  CHECK(inst.jumps == std::vector<std::int64_t>{2, 4, 8});
  CHECK(inst.signed_jumps() == std::vector<std::int64_t>{2, 4, -6});
  for (int k = 3; k <= 10; ++k) {
    for (std::int64_t t = 1; t <= 300; ++t) {
      const auto v = ResidueInstance::make(k, t).signed_jumps();
      CHECK(std::accumulate(v.begin(), v.end(), std::int64_t{0}) == 0);
      for (auto x : v) CHECK(std::abs(x) < (std::int64_t{1} << k) - 1);
    }
  }
}

TEST_CASE("residue check at k = 3, t = 1") {
  const auto w = residue_check(3, 1);
  REQUIRE(w);
  CHECK(w->start == 0);
  CHECK(w->chain == std::vector<std::int64_t>{2, 4, 8});
  CHECK(w->positions == std::vector<std::int64_t>{0, 2, 6, 0});
}

TEST_CASE("residue witnesses are valid") {
  for (int k = 3; k <= 9; ++k) {
    const std::int64_t m = (std::int64_t{1} << (k + 1)) - 2;
    for (std::int64_t t = 1; t <= m; ++t) {
      const auto inst = ResidueInstance::make(k, t);
      const auto w = residue_check(inst);
      REQUIRE(w);
      auto chain = w->chain;
      auto jumps = inst.jumps;
      std::sort(chain.begin(), chain.end());
      std::sort(jumps.begin(), jumps.end());
      CHECK(chain == jumps);
      std::int64_t pos = w->start;
      CHECK(inst.red(pos));
      for (std::size_t i = 0; i < w->chain.size(); ++i) {
        pos = (pos + w->chain[i]) % inst.m;
        CHECK(pos == w->positions[i + 1]);
        CHECK(inst.red(pos));
      }
      CHECK(pos == w->start);
    }
  }
}

TEST_CASE("residue check matches exhaustive orders") {
  for (int k = 3; k <= 5; ++k) {
    const std::int64_t m = (std::int64_t{1} << (k + 1)) - 2;
    for (std::int64_t t = 1; t <= m; ++t) CHECK(residue_check(k, t).has_value() == residue_reference(k, t));
  }
}

TEST_CASE("residue check matches the detector") {
  for (int k = 3; k <= 6; ++k) {
    const auto d = power_tuple(k);
    for (std::int64_t t = 1; t <= 50; ++t) {
      const auto [c, inst] = discretize_uniform(d, t);
      const bool red = detect(c, inst, ClassFilter::RedOnly).has_value();
      CHECK(red == residue_check(k, t).has_value());
    }
  }
}

TEST_CASE("sweep agrees with single checks and worker count") {
  for (int k = 3; k <= 8; ++k) {
    const std::int64_t m = (std::int64_t{1} << (k + 1)) - 2;
    const auto one = residue_sweep(k, m, 1);
    const auto four = residue_sweep(k, m, 4);
    CHECK(one.checked == m);
    CHECK(one.failures.empty());
    CHECK(four.failures == one.failures);
  }
}

TEST_CASE("nonpower witnesses") {
  CHECK(nonpower_witness(DistanceTuple::parse("1/2,1/3,1/6"), 10) == std::optional<std::int64_t>{1});
  CHECK_FALSE(nonpower_witness(power_tuple(3), 50).has_value());
  const auto t = nonpower_witness(DistanceTuple::parse("1/2,1/4,1/4"), 10);
  REQUIRE(t);
  CHECK(*t <= 10);
  const auto [c, inst] = discretize_uniform(DistanceTuple::parse("1/2,1/4,1/4"), *t);
  CHECK_FALSE(detect_bruteforce(c, inst).has_value());
}

TEST_CASE("discretized uniform colouring") {
  const auto [c, inst] = discretize_uniform(power_tuple(3), 3);
  CHECK(c.n() == 42);
  CHECK(inst.n == 42);
  CHECK(inst.gaps == std::vector<std::int64_t>{24, 12, 6});
}
