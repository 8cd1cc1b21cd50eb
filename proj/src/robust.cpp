#include "ramsey/robust.hpp"

#include <algorithm>
#include <set>

#include "ramsey/detector.hpp"
#include "ramsey/parallel.hpp"
#include "ramsey/uniform.hpp"

namespace ramsey {

namespace {

void require_triple(const DistanceTuple& d) {
  if (d.k() != 3) throw DomainError("expected a triple, got k = " + std::to_string(d.k()));
}

// Vertex sets of all copies of the instance, as bit masks over Z_n.
std::vector<std::uint64_t> copy_masks(const DiscreteInstance& inst) {
  std::vector<std::int64_t> order = inst.gaps;
  std::sort(order.begin(), order.end());
  std::set<std::uint64_t> masks;
  do {
    for (std::int64_t s = 0; s < inst.n; ++s) {
      std::uint64_t mask = 0;
      std::int64_t pos = s;
      for (auto g : order) {
        mask |= std::uint64_t{1} << pos;
        pos = (pos + g) % inst.n;
      }
      masks.insert(mask);
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return {masks.begin(), masks.end()};
}

}  // namespace

TripleAnalysis::TripleAnalysis(DistanceTuple d) : d_(std::move(d)) {
  require_triple(d_);
  for (std::size_t i = 0; i < 3; ++i) q_[i] = to_int64(d_[i].den());
}

bool TripleAnalysis::in_candidate_set(std::int64_t t) const {
  return std::none_of(q_.begin(), q_.end(), [&](std::int64_t q) { return (2 * t) % q == 0; });
}

bool TripleAnalysis::candidate_set_empty() const {
  return std::any_of(q_.begin(), q_.end(), [](std::int64_t q) { return 2 % q == 0; });
}

bool is_suitable(const DistanceTuple& d, std::int64_t t) {
  const auto [colouring, inst] = discretize_uniform(d, t);
  return !detect(colouring, inst).has_value();
}

bool is_strongly_suitable(const DistanceTuple& d, std::int64_t t) {
  require_triple(d);
  for (const auto& x : d.distances()) {
    const Rational twice = Rational(2 * t) * x;
    if (twice.is_integer() && twice.num() % 2 != 0) return false;
  }
  return is_suitable(d, t);
}

SuitableSearchResult strongly_suitable_search(const DistanceTuple& d, std::int64_t max_t) {
  const TripleAnalysis analysis(d);
  SuitableSearchResult result;
  if (analysis.candidate_set_empty()) {
    result.candidate_set_empty = true;
    return result;
  }
  for (std::int64_t t = 1; t <= max_t; ++t) {
    if (analysis.in_candidate_set(t) && is_strongly_suitable(d, t)) {
      result.t = t;
      break;
    }
  }
  return result;
}

NearlyRamseyVerdict nearly_ramsey_finite_check(const DistanceTuple& d, std::int64_t n, unsigned workers) {
  require_triple(d);
  const std::int64_t base = d.common_denominator();
  if (n < 1 || n % base != 0) {
    throw DomainError("the triple does not fit Z_" + std::to_string(n) + " (needs a multiple of " +
                      std::to_string(base) + ")");
  }
  if (n > 30) throw DomainError("exhaustive check supports N <= 30");
  const auto inst = discretize(d, n / base);
  const auto masks = copy_masks(inst);
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  const std::uint64_t total = std::uint64_t{1} << (n - 1);

  // Colouring index i gives vertex v >= 1 the colour Red iff bit v-1 of i is
  // set; vertex 0 is black and joins both classes.
  auto forced = [&](std::uint64_t i) {
    const std::uint64_t red = (i << 1) | 1u;
    const std::uint64_t blue = (all ^ (i << 1));
    return std::any_of(masks.begin(), masks.end(),
                       [&](std::uint64_t m) { return (m & red) == m || (m & blue) == m; });
  };

  constexpr std::uint64_t kChunk = 4096;
  const std::uint64_t chunks = (total + kChunk - 1) / kChunk;
  std::vector<std::uint64_t> first_bad(chunks, total);
  const auto bad_chunk = parallel_find_first(chunks, workers, [&](std::size_t c) {
    const std::uint64_t end = std::min(total, (c + 1) * kChunk);
    for (std::uint64_t i = c * kChunk; i < end; ++i) {
      if (!forced(i)) {
        first_bad[c] = i;
        return true;
      }
    }
    return false;
  });

  NearlyRamseyVerdict verdict;
  if (!bad_chunk) {
    verdict.verified = true;
    verdict.colourings_checked = total;
    return verdict;
  }
  const std::uint64_t i = first_bad[*bad_chunk];
  verdict.colourings_checked = i + 1;
  Colouring c(n, Colour::Blue);
  c.set(0, Colour::Red);
  for (std::int64_t v = 1; v < n; ++v) {
    if (i >> (v - 1) & 1u) c.set(v, Colour::Red);
  }
  c.set_black(0);
  if (detect_bruteforce(c, inst)) throw Error("nearly-Ramsey sweep disagrees with the detector");
  verdict.counterexample = std::move(c);
  return verdict;
}

}  // namespace ramsey
