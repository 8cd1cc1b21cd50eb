#include "ramsey/doubling.hpp"

#include "ramsey/uniform.hpp"

namespace ramsey {

namespace {

void require_open_unit(const Rational& x) {
  if (!(Rational(-1) < x && x < Rational(1))) throw DomainError(x.str() + " is not in (-1, 1)");
}

void require_zero_sum(const std::vector<Rational>& xs) {
  Rational total = 0;
  for (const auto& x : xs) total += x;
  if (total != Rational(0)) throw Error("closed doubling orbit with sum " + total.str() + " != 0");
}

}  // namespace

Rational doubling_step(const Rational& x) {
  require_open_unit(x);
  const Rational twice = x * Rational(2);
  if (twice == Rational(1) || twice == Rational(-1)) {
    throw BoundaryError("doubling map undefined at x = " + x.str() + " (2x = +-1)");
  }
  if (twice > Rational(1)) return twice - Rational(2);
  if (twice < Rational(-1)) return twice + Rational(2);
  return twice;
}

std::optional<DoublingOrbit> orbit_from_seed(const Rational& x1, int k) {
  if (k < 1) throw DomainError("orbit length must be positive");
  require_open_unit(x1);
  DoublingOrbit orbit;
  Rational x = x1;
  for (int i = 0; i < k; ++i) {
    orbit.xs.push_back(x);
    x = doubling_step(x);
  }
  if (x != x1) return std::nullopt;
  require_zero_sum(orbit.xs);
  return orbit;
}

DoublingOrbit orbit_from_uniform(int k, std::int64_t t) {
  const auto inst = ResidueInstance::make(k, t);
  DoublingOrbit orbit;
  for (auto v : inst.signed_jumps()) orbit.xs.emplace_back(BigInt{v}, BigInt{inst.window});
  require_zero_sum(orbit.xs);
  return orbit;
}

namespace {

// Works on the values scaled to a common denominator, so prefix sums are
// integers compared against [0, scale).
class PrefixSearch {
 public:
  explicit PrefixSearch(std::span<const Rational> xs)
      : full_((std::uint32_t{1} << xs.size()) - 1), dead_(static_cast<std::size_t>(full_) + 1, 0) {
    for (const auto& x : xs) scale_ = lcm(scale_, x.den());
    for (const auto& x : xs) values_.push_back(checked_mul(x.num(), scale_ / x.den()));
  }

  std::optional<std::vector<int>> run() {
    if (extend(0, 0)) return order_;
    return std::nullopt;
  }

 private:
  bool extend(std::uint32_t used, BigInt sum) {
    if (used == full_) return true;
    if (dead_[used]) return false;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      const std::uint32_t bit = std::uint32_t{1} << i;
      if (used & bit) continue;
      const BigInt next = checked_add(sum, values_[i]);
      if (next < 0 || next >= scale_) continue;
      order_.push_back(static_cast<int>(i) + 1);
      if (extend(used | bit, next)) return true;
      order_.pop_back();
    }
    dead_[used] = 1;
    return false;
  }

  BigInt scale_ = 1;
  std::vector<BigInt> values_;
  std::uint32_t full_;
  std::vector<std::uint8_t> dead_;
  std::vector<int> order_;
};

}  // namespace

std::optional<std::vector<int>> prefix_permutation(std::span<const Rational> xs) {
  if (xs.size() > 26) throw DomainError("prefix permutation search supports at most 26 values");
  Rational total = 0;
  for (const auto& x : xs) total += x;
  if (total != Rational(0)) throw PreconditionError("values sum to " + total.str() + ", not 0");
  return PrefixSearch(xs).run();
}

}  // namespace ramsey
