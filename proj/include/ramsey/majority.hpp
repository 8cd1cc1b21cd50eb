#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ramsey/core.hpp"
#include "ramsey/detector.hpp"

namespace ramsey {

/// k >= 6 and 2^{k-1}/(2^k - 1) - 1/2 < eps < 1/80, both strict.
struct MajorityParams {
  int k;
  Rational eps;

  static MajorityParams make(int k, const Rational& eps);
  /// Lower end of the admissible eps window for this k.
  static Rational window_low(int k);
};

/// The ten interval lengths, alternately red and blue starting with red.
std::vector<Rational> majority_intervals(const MajorityParams& params);

/// Smallest grid on which every interval endpoint and every gap of the
/// (k,2)-power is a whole number of steps.
std::int64_t majority_grid(const MajorityParams& params);

/// The colouring on Z_grid; each interval keeps its lower endpoint.
Colouring majority_colouring(const MajorityParams& params, std::int64_t grid);

struct MajorityVerdict {
  bool no_red_copy = false;
  std::optional<CopyWitness> witness;
  std::int64_t grid = 0;
  std::int64_t red = 0;
  std::int64_t blue = 0;
  /// Red measure minus blue measure, 1/8 - 10 eps.
  Rational density_gap;
};

/// Searches the discretized colouring for a red copy of the (k,2)-power.
/// Blue copies are not looked at.
MajorityVerdict majority_verify(const MajorityParams& params, unsigned workers = 1);

}  // namespace ramsey
