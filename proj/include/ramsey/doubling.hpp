#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ramsey/rational.hpp"

namespace ramsey {

/// Raised when 2x = 1 or 2x = -1 exactly: the doubling map is not defined there.
class BoundaryError : public Error {
 public:
  using Error::Error;
};

/// x_1..x_k in (-1, 1) with x_{i+1} = D(x_i) cyclically, where D doubles and
/// folds back into (-1, 1).
struct DoublingOrbit {
  std::vector<Rational> xs;
};

/// D(x) = 2x, 2x - 2 when 2x > 1, 2x + 2 when 2x < -1.
Rational doubling_step(const Rational& x);

/// Iterates D k times from x1. Returns the orbit iff the (k+1)-th iterate is
/// x1 again.
std::optional<DoublingOrbit> orbit_from_seed(const Rational& x1, int k);

/// x_i = v_i / (2^k - 1) where v_i is 2^i t mod (2^{k+1} - 2) read as a signed
/// move in (-(2^k - 1), 2^k - 1).
DoublingOrbit orbit_from_uniform(int k, std::int64_t t);

/// A permutation (1-based) whose prefix sums all lie in [0, 1), or none.
/// Searches used-subsets with memoisation, trying indices in increasing order,
/// so the answer is the lexicographically first such permutation.
std::optional<std::vector<int>> prefix_permutation(std::span<const Rational> xs);

}  // namespace ramsey
