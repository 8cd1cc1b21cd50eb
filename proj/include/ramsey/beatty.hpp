#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ramsey/rational.hpp"

namespace ramsey {

/// k Beatty sequences floor(alpha_i * n + beta_i), n = 0, 1, 2, ...
/// Alphas are positive and non-decreasing.
struct BeattyPair {
  std::vector<Rational> alphas;
  std::vector<Rational> betas;

  BeattyPair(std::vector<Rational> alphas, std::vector<Rational> betas);
  /// beta_i = alpha_i / 2.
  static BeattyPair half(std::vector<Rational> alphas);
  /// alpha_i = (2^k - 1) / 2^{k-i}, beta_i = alpha_i / 2.
  static BeattyPair power(int k);

  std::size_t k() const { return alphas.size(); }
  bool is_half() const;
  /// lcm of the reduced numerators of the alphas; the word is periodic with
  /// this period.
  std::int64_t period() const;
};

std::int64_t beatty_term(const Rational& alpha, const Rational& beta, std::int64_t n);

struct PartitionVerdict {
  enum class Kind { Ok, Collision, Gap, Negative };
  Kind kind = Kind::Ok;
  /// The offending integer.
  std::int64_t value = 0;
  /// 0-based sequence indices. For a collision `first` < `second` unless one
  /// sequence repeats a value, in which case they are equal.
  std::size_t first = 0;
  std::size_t second = 0;
  /// True when the checked prefix covers a full period past every offset, so
  /// the verdict holds for all of N and not only for [0, M).
  bool exact = false;

  bool ok() const { return kind == Kind::Ok; }
  std::string describe() const;
};

/// Checks that every integer in [0, M) lies in exactly one sequence.
/// Collisions are reported before gaps; within a kind the smallest value wins.
PartitionVerdict partition_check(const BeattyPair& pair, std::int64_t limit);

class PartitionError : public Error {
 public:
  explicit PartitionError(PartitionVerdict verdict);
  const PartitionVerdict& verdict() const { return verdict_; }

 private:
  PartitionVerdict verdict_;
};

/// Letters are 1..k; the infinite word repeats `period`.
struct BalancedWord {
  std::vector<int> period;

  explicit BalancedWord(std::vector<int> period);
  /// "abac..." or "1,2,1,3,...".
  static BalancedWord parse(const std::string& text);
  int letters() const;
};

/// s_j = index (1-based) of the sequence containing j, for j in [0, M).
/// Throws PartitionError when [0, M) is not partitioned.
std::vector<int> word_from_pair(const BeattyPair& pair, std::int64_t limit);

struct BalanceVerdict {
  bool balanced = true;
  int letter = 0;
  std::int64_t length = 0;
  /// Start positions of a window with the most and with the fewest copies.
  std::int64_t heavy_window = 0;
  std::int64_t light_window = 0;
};

/// Compares every window of length 1..p starting in [0, p) of the periodic word.
BalanceVerdict balanced_check(const BalancedWord& w);

std::vector<Rational> densities(const BalancedWord& w);

struct FraenkelReport {
  std::int64_t period = 0;
  std::vector<int> word;  // one period
  bool exact = false;
  bool symmetric = false;
  /// Per letter: two consecutive occurrences with no larger letter between.
  std::vector<bool> consecutive_condition;
  std::vector<Rational> densities;
  /// densities[i] == 1 / alpha_i for every letter.
  bool densities_match_alphas = false;
  bool balanced = false;
  /// densities equal the (k,2)-power.
  bool power = false;
};

/// Period, symmetry, consecutive-occurrence condition and densities of the
/// word of a pair with beta_i = alpha_i / 2 and strictly increasing alphas.
/// The partition is verified on max(M, 2p) integers first.
FraenkelReport fraenkel_diagnostics(const BeattyPair& pair, std::int64_t limit);

}  // namespace ramsey
