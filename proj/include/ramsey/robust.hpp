#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "ramsey/core.hpp"

namespace ramsey {

/// A rational triple with its reduced denominators, and the candidate set
/// T = { t : no q_i divides 2t }.
class TripleAnalysis {
 public:
  explicit TripleAnalysis(DistanceTuple d);

  const DistanceTuple& tuple() const { return d_; }
  const std::array<std::int64_t, 3>& denominators() const { return q_; }
  bool in_candidate_set(std::int64_t t) const;
  /// T is empty exactly when some q_i divides 2, i.e. some d_i = 1/2.
  bool candidate_set_empty() const;

 private:
  DistanceTuple d_;
  std::array<std::int64_t, 3> q_{};
};

/// c_t contains no monochromatic copy of d.
bool is_suitable(const DistanceTuple& d, std::int64_t t);

/// Suitable, and no 2t * d_i is an odd integer.
bool is_strongly_suitable(const DistanceTuple& d, std::int64_t t);

struct SuitableSearchResult {
  std::optional<std::int64_t> t;
  bool candidate_set_empty = false;
};

/// Smallest strongly-suitable t <= max_t inside T.
SuitableSearchResult strongly_suitable_search(const DistanceTuple& d, std::int64_t max_t);

struct NearlyRamseyVerdict {
  bool verified = false;
  std::uint64_t colourings_checked = 0;
  /// First colouring (vertex 0 black) with no copy inside Red+black or Blue+black.
  std::optional<Colouring> counterexample;
};

/// Exhausts all 2^{N-1} colourings of Z_N \ {0} with vertex 0 black and
/// checks each for a copy of d inside one colour class plus the black vertex.
NearlyRamseyVerdict nearly_ramsey_finite_check(const DistanceTuple& d, std::int64_t n, unsigned workers = 1);

}  // namespace ramsey
