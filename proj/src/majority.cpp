#include "ramsey/majority.hpp"

namespace ramsey {

namespace {

constexpr std::int64_t kMaxGrid = 50'000'000;

}  // namespace

Rational MajorityParams::window_low(int k) {
  if (k < 2 || k > 62) throw DomainError("k out of range");
  const BigInt top = (BigInt{1} << k) - 1;
  return Rational(BigInt{1} << (k - 1), top) - Rational(1, 2);
}

MajorityParams MajorityParams::make(int k, const Rational& eps) {
  if (k < 6) throw DomainError("the construction needs k >= 6 (the eps window is empty for k = " + std::to_string(k) + ")");
  if (k > 24) throw DomainError("k = " + std::to_string(k) + " is beyond the supported range");
  const Rational low = window_low(k);
  const Rational high(1, 80);
  if (!(low < eps && eps < high)) {
    throw DomainError("eps = " + eps.str() + " is outside the open window (" + low.str() + ", 1/80)");
  }
  return MajorityParams{k, eps};
}

std::vector<Rational> majority_intervals(const MajorityParams& params) {
  const Rational e = params.eps;
  const Rational s(1, 16);
  const Rational l(1, 8);
  return {s - e, l + e, l - e, s + e, l - e, s + e, l - e, s + e, l - e, l + e};
}

std::int64_t majority_grid(const MajorityParams& params) {
  try {
    BigInt grid = (BigInt{1} << params.k) - 1;
    Rational at = 0;
    for (const auto& len : majority_intervals(params)) {
      at += len;
      grid = lcm(grid, at.den());
    }
    if (grid > kMaxGrid) throw OverflowError("grid");
    return to_int64(grid);
  } catch (const OverflowError&) {
    throw DomainError("grid for eps = " + params.eps.str() +
                      " is too large; choose an eps with a smaller denominator");
  }
}

Colouring majority_colouring(const MajorityParams& params, std::int64_t grid) {
  if (grid < 1) throw DomainError("grid must be positive");
  Colouring c(grid, Colour::Blue);
  Rational at = 0;
  std::int64_t from = 0;
  bool red = true;
  for (const auto& len : majority_intervals(params)) {
    at += len;
    const Rational end = at * Rational(grid);
    if (!end.is_integer()) {
      throw DomainError("grid " + std::to_string(grid) + " does not contain the endpoint " + at.str());
    }
    const auto to = to_int64(end.num());
    for (std::int64_t v = from; v < to; ++v) c.set(v, red ? Colour::Red : Colour::Blue);
    from = to;
    red = !red;
  }
  return c;
}

MajorityVerdict majority_verify(const MajorityParams& params, unsigned workers) {
  MajorityVerdict verdict;
  verdict.grid = majority_grid(params);
  const auto c = majority_colouring(params, verdict.grid);
  verdict.red = c.count(Colour::Red);
  verdict.blue = verdict.grid - verdict.red;
  verdict.density_gap = Rational(1, 8) - Rational(10) * params.eps;

  const BigInt base = (BigInt{1} << params.k) - 1;
  const auto inst = discretize(power_tuple(params.k), verdict.grid / to_int64(base));
  // Red starts only, pruned as soon as a vertex turns blue.
  verdict.witness = detect_bruteforce(c, inst, nullptr, ClassFilter::RedOnly, workers);
  verdict.no_red_copy = !verdict.witness.has_value();
  return verdict;
}

}  // namespace ramsey
