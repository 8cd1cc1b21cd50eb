#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ramsey/core.hpp"

namespace ramsey {

enum class WitnessColour { Red, Blue, RedOrBlack, BlueOrBlack };
std::string_view witness_colour_name(WitnessColour c);

/// Which colour classes a search looks at.
enum class ClassFilter { Both, RedOnly, BlueOnly };

/// A monochromatic permuted copy: vertices[i + 1] = vertices[i] + gap_order[i]
/// (mod n), and the last gap closes the polygon back to vertices[0].
struct CopyWitness {
  std::vector<std::int64_t> vertices;
  std::vector<std::int64_t> gap_order;
  WitnessColour colour = WitnessColour::Red;

  friend bool operator==(const CopyWitness&, const CopyWitness&) = default;
};

/// A set of cyclic gap orders, each stored as its lexicographically least rotation.
class CyclicOrderSet {
 public:
  void add(std::vector<std::int64_t> order);
  bool contains(const std::vector<std::int64_t>& order) const;
  bool empty() const { return orders_.empty(); }
  std::size_t size() const { return orders_.size(); }
  bool is_subset_of(const CyclicOrderSet& other) const;

  static std::vector<std::int64_t> canonical(std::vector<std::int64_t> order);

  /// One order per line, gap values separated by commas; '#' starts a comment.
  static CyclicOrderSet parse(std::string_view text, const DiscreteInstance& inst);

 private:
  std::set<std::vector<std::int64_t>> orders_;
};

/// Unique-subset-sum decomposition of the gap lengths.
///
/// size(l) is the number of gaps in the unique subset summing to l (0 when
/// no subset does) and subset(l) is that subset as a bit mask over gap
/// indices. Entry l = n holds the full gap set.
class SubsetSumTable {
 public:
  /// Throws PreconditionError naming two colliding subsets when subset sums
  /// are not pairwise distinct.
  explicit SubsetSumTable(const DiscreteInstance& inst);

  static bool has_distinct_subset_sums(const DiscreteInstance& inst);

  std::int64_t n() const { return n_; }
  std::size_t k() const { return k_; }
  int size(std::int64_t length) const { return b_[static_cast<std::size_t>(length)]; }
  std::uint32_t subset(std::int64_t length) const { return s_[static_cast<std::size_t>(length)]; }
  /// Sum of the gaps in `mask`.
  std::int64_t length_of(std::uint32_t mask) const { return sum_of_mask_[mask]; }
  std::uint32_t full_mask() const { return (std::uint32_t{1} << k_) - 1; }

 private:
  std::int64_t n_;
  std::size_t k_;
  std::vector<std::uint8_t> b_;
  std::vector<std::uint32_t> s_;
  std::vector<std::int64_t> sum_of_mask_;
};

/// Exhaustive search over start vertices and gap orders. Reports the
/// lexicographically smallest witness by (start vertex, gap order), Red
/// before Blue on ties. With a restriction only the listed cyclic orders count.
/// Start vertices are split across `workers` threads; the answer is the same.
std::optional<CopyWitness> detect_bruteforce(const Colouring& c, const DiscreteInstance& inst,
                                             const CyclicOrderSet* restriction = nullptr,
                                             ClassFilter filter = ClassFilter::Both, unsigned workers = 1);

/// Path dynamic program over (start vertex, gap subset). Requires pairwise
/// distinct subset sums; returns the same witness as detect_bruteforce.
std::optional<CopyWitness> detect_dp(const Colouring& c, const DiscreteInstance& inst,
                                     ClassFilter filter = ClassFilter::Both);

/// detect_dp when its precondition holds and the table is small, otherwise
/// detect_bruteforce.
std::optional<CopyWitness> detect(const Colouring& c, const DiscreteInstance& inst,
                                  ClassFilter filter = ClassFilter::Both);

/// Every copy of the instance exactly once, as vertex lists starting at the
/// start vertex of the largest gap. Requires pairwise distinct gaps.
std::vector<std::vector<std::int64_t>> enumerate_copies(const DiscreteInstance& inst);

struct CopyCounts {
  std::int64_t red = 0;
  std::int64_t blue = 0;
  friend bool operator==(const CopyCounts&, const CopyCounts&) = default;
};

CopyCounts count_copies(const Colouring& c, const DiscreteInstance& inst);

/// Independent re-check of a witness: geometry, gap multiset and colour class.
bool validate_witness(const Colouring& c, const DiscreteInstance& inst, const CopyWitness& w);

}  // namespace ramsey
