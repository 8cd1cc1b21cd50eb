#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ramsey/core.hpp"
#include "ramsey/detector.hpp"

namespace ramsey {

/// Z_grid split into 2t equal blocks coloured alternately, starting with Red.
/// Each block contains its clockwise (lower-index) endpoint.
Colouring uniform_colouring(std::int64_t t, std::int64_t grid);

/// The uniform colouring c_t and the tuple together on grid lcm(2t, N).
std::pair<Colouring, DiscreteInstance> discretize_uniform(const DistanceTuple& d, std::int64_t t);

struct JumpResult {
  /// round(t * d_i) per distance; empty when blocked.
  std::vector<std::int64_t> counts;
  /// 0-based index of the first distance with t * d_i a half-integer. An arc
  /// of that length always joins blocks of different colours.
  std::optional<std::size_t> blocked;
  /// sum of counts == t.
  bool identity_holds = false;
};

JumpResult jump_counts(const DistanceTuple& d, std::int64_t t);

/// The red-copy question for c_t and the (k,2)-power, reduced modulo
/// m = 2^{k+1} - 2. Residues 0..2^k-2 are red.
struct ResidueInstance {
  int k = 0;
  std::int64_t m = 0;
  std::int64_t window = 0;  // number of red residues, 2^k - 1
  std::vector<std::int64_t> jumps;  // 2^i * t mod m for i = 1..k

  static ResidueInstance make(int k, std::int64_t t);

  bool red(std::int64_t residue) const { return residue < window; }
  /// Jumps read as signed moves in (-window, window). Throws if a jump equals
  /// `window` exactly, which would contradict the structure of the reduction.
  std::vector<std::int64_t> signed_jumps() const;
};

struct ResidueWitness {
  std::int64_t start = 0;
  /// Jump values in the order they are added.
  std::vector<std::int64_t> chain;
  /// start, start + chain[0], ... reduced mod m; the last equals start.
  std::vector<std::int64_t> positions;
};

/// A start residue and an order of the jumps keeping every partial sum red,
/// found by a subset-state search (partial sums depend only on the used set).
std::optional<ResidueWitness> residue_check(int k, std::int64_t t);
std::optional<ResidueWitness> residue_check(const ResidueInstance& inst);

struct ResidueSweepResult {
  std::int64_t checked = 0;
  /// Every t in the range without a red copy, ascending.
  std::vector<std::int64_t> failures;
};

/// residue_check for all t in [1, max_t]. Results are shared between t
/// with the same jump multiset.
ResidueSweepResult residue_sweep(int k, std::int64_t max_t, unsigned workers = 1);

/// Smallest t <= max_t whose uniform colouring has no monochromatic copy of d.
std::optional<std::int64_t> nonpower_witness(const DistanceTuple& d, std::int64_t max_t);

}  // namespace ramsey
