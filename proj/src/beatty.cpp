#include "ramsey/beatty.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "ramsey/core.hpp"

namespace ramsey {

BeattyPair::BeattyPair(std::vector<Rational> a, std::vector<Rational> b) : alphas(std::move(a)), betas(std::move(b)) {
  if (alphas.empty()) throw DomainError("a Beatty pair needs at least one sequence");
  if (alphas.size() != betas.size()) throw DomainError("alphas and betas differ in length");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (alphas[i].sign() <= 0) throw DomainError("alpha " + alphas[i].str() + " is not positive");
    if (i > 0 && alphas[i] < alphas[i - 1]) throw DomainError("alphas must be non-decreasing");
  }
}

BeattyPair BeattyPair::half(std::vector<Rational> a) {
  std::vector<Rational> b;
  for (const auto& x : a) b.push_back(x / Rational(2));
  return BeattyPair(std::move(a), std::move(b));
}

BeattyPair BeattyPair::power(int k) {
  if (k < 1 || k > 62) throw DomainError("k out of range");
  const BigInt top = (BigInt{1} << k) - 1;
  std::vector<Rational> a;
  for (int i = 1; i <= k; ++i) a.emplace_back(top, BigInt{1} << (k - i));
  return half(std::move(a));
}

bool BeattyPair::is_half() const {
  for (std::size_t i = 0; i < k(); ++i) {
    if (betas[i] * Rational(2) != alphas[i]) return false;
  }
  return true;
}

std::int64_t BeattyPair::period() const {
  BigInt p = 1;
  for (const auto& a : alphas) p = lcm(p, a.num());
  return to_int64(p);
}

std::int64_t beatty_term(const Rational& alpha, const Rational& beta, std::int64_t n) {
  const BigInt num = checked_add(checked_mul(checked_mul(alpha.num(), n), beta.den()),
                                 checked_mul(beta.num(), alpha.den()));
  return to_int64(floor_div(num, checked_mul(alpha.den(), beta.den())));
}

std::string PartitionVerdict::describe() const {
  const std::string scope = exact ? " (exact)" : " (prefix-bounded)";
  switch (kind) {
    case Kind::Ok:
      return "ok" + scope;
    case Kind::Collision:
      return "collision at " + std::to_string(value) + " between sequences " + std::to_string(first + 1) +
             " and " + std::to_string(second + 1);
    case Kind::Gap:
      return "gap: " + std::to_string(value) + " is in no sequence";
    case Kind::Negative:
      return "sequence " + std::to_string(first + 1) + " takes the negative value " + std::to_string(value);
  }
  return "?";
}

PartitionVerdict partition_check(const BeattyPair& pair, std::int64_t limit) {
  if (limit < 1) throw DomainError("limit must be at least 1");
  constexpr std::int16_t kFree = -1;
  std::vector<std::int16_t> owner(static_cast<std::size_t>(limit), kFree);
  std::optional<PartitionVerdict> collision;
  std::optional<PartitionVerdict> negative;

  for (std::size_t i = 0; i < pair.k(); ++i) {
    for (std::int64_t n = 0;; ++n) {
      const std::int64_t v = beatty_term(pair.alphas[i], pair.betas[i], n);
      if (v >= limit) break;
      if (v < 0) {
        if (!negative || v < negative->value) {
          negative = PartitionVerdict{PartitionVerdict::Kind::Negative, v, i, i, false};
        }
        continue;
      }
      auto& slot = owner[static_cast<std::size_t>(v)];
      if (slot == kFree) {
        slot = static_cast<std::int16_t>(i);
      } else if (!collision || v < collision->value) {
        collision = PartitionVerdict{PartitionVerdict::Kind::Collision, v, static_cast<std::size_t>(slot), i, false};
      }
    }
  }

  PartitionVerdict verdict;
  if (collision) {
    verdict = *collision;
  } else if (negative) {
    verdict = *negative;
  } else {
    const auto it = std::find(owner.begin(), owner.end(), kFree);
    if (it != owner.end()) {
      verdict.kind = PartitionVerdict::Kind::Gap;
      verdict.value = it - owner.begin();
    }
  }

  // Term n + q_i of sequence i is term n plus p, and every term with n < q_i
  // lies below p + floor(beta_i). Membership is therefore p-periodic from
  // max(0, max floor(beta_i)) on.
  try {
    BigInt offset = 0;
    for (const auto& b : pair.betas) offset = std::max(offset, b.floor());
    verdict.exact = checked_add(offset, pair.period()) <= limit;
  } catch (const OverflowError&) {
    verdict.exact = false;
  }
  return verdict;
}

PartitionError::PartitionError(PartitionVerdict verdict)
    : Error("pair does not partition the prefix: " + verdict.describe()), verdict_(verdict) {}

BalancedWord::BalancedWord(std::vector<int> p) : period(std::move(p)) {
  if (period.empty()) throw DomainError("a balanced word needs a non-empty period");
  const int top = *std::max_element(period.begin(), period.end());
  std::vector<bool> seen(static_cast<std::size_t>(std::max(top, 0)) + 1, false);
  for (int x : period) {
    if (x < 1) throw DomainError("letters must be positive");
    seen[static_cast<std::size_t>(x)] = true;
  }
  for (int a = 1; a <= top; ++a) {
    if (!seen[static_cast<std::size_t>(a)]) throw DomainError("letters must be 1..k without holes");
  }
}

BalancedWord BalancedWord::parse(const std::string& text) {
  std::vector<int> letters;
  if (text.find(',') != std::string::npos) {
    for (auto v : parse_integer_list(text)) {
      if (v < 1 || v > std::numeric_limits<int>::max()) throw ParseError("letter out of range", 1, 1);
      letters.push_back(static_cast<int>(v));
    }
  } else {
    for (std::size_t i = 0; i < text.size(); ++i) {
      const char ch = text[i];
      if (ch >= 'a' && ch <= 'z') {
        letters.push_back(ch - 'a' + 1);
      } else if (ch >= '1' && ch <= '9') {
        letters.push_back(ch - '0');
      } else {
        throw ParseError(std::string("invalid letter '") + ch + "'", 1, static_cast<int>(i) + 1);
      }
    }
  }
  return BalancedWord(std::move(letters));
}

int BalancedWord::letters() const { return *std::max_element(period.begin(), period.end()); }

std::vector<int> word_from_pair(const BeattyPair& pair, std::int64_t limit) {
  const auto verdict = partition_check(pair, limit);
  if (!verdict.ok()) throw PartitionError(verdict);
  std::vector<int> word(static_cast<std::size_t>(limit), 0);
  for (std::size_t i = 0; i < pair.k(); ++i) {
    for (std::int64_t n = 0;; ++n) {
      const std::int64_t v = beatty_term(pair.alphas[i], pair.betas[i], n);
      if (v >= limit) break;
      word[static_cast<std::size_t>(v)] = static_cast<int>(i) + 1;
    }
  }
  return word;
}

BalanceVerdict balanced_check(const BalancedWord& w) {
  const std::size_t p = w.period.size();
  const int k = w.letters();
  // prefix[a][i] = occurrences of letter a+1 among the first i letters of the doubled word.
  std::vector<std::vector<std::int64_t>> prefix(static_cast<std::size_t>(k), std::vector<std::int64_t>(2 * p + 1, 0));
  for (std::size_t i = 0; i < 2 * p; ++i) {
    const int letter = w.period[i % p];
    for (int a = 0; a < k; ++a) {
      prefix[static_cast<std::size_t>(a)][i + 1] = prefix[static_cast<std::size_t>(a)][i] + (letter == a + 1 ? 1 : 0);
    }
  }
  for (std::size_t len = 1; len <= p; ++len) {
    for (int a = 0; a < k; ++a) {
      const auto& pre = prefix[static_cast<std::size_t>(a)];
      std::size_t heavy = 0;
      std::size_t light = 0;
      for (std::size_t s = 1; s < p; ++s) {
        const auto c = pre[s + len] - pre[s];
        if (c > pre[heavy + len] - pre[heavy]) heavy = s;
        if (c < pre[light + len] - pre[light]) light = s;
      }
      if ((pre[heavy + len] - pre[heavy]) - (pre[light + len] - pre[light]) > 1) {
        return BalanceVerdict{false, a + 1, static_cast<std::int64_t>(len), static_cast<std::int64_t>(heavy),
                              static_cast<std::int64_t>(light)};
      }
    }
  }
  return BalanceVerdict{};
}

std::vector<Rational> densities(const BalancedWord& w) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(w.letters()), 0);
  for (int x : w.period) ++counts[static_cast<std::size_t>(x - 1)];
  std::vector<Rational> out;
  for (auto c : counts) out.emplace_back(BigInt{c}, BigInt{static_cast<std::int64_t>(w.period.size())});
  return out;
}

FraenkelReport fraenkel_diagnostics(const BeattyPair& pair, std::int64_t limit) {
  if (!pair.is_half()) throw PreconditionError("diagnostics need beta_i = alpha_i / 2");
  for (std::size_t i = 1; i < pair.k(); ++i) {
    if (!(pair.alphas[i - 1] < pair.alphas[i])) throw PreconditionError("diagnostics need strictly increasing alphas");
  }
  FraenkelReport report;
  report.period = pair.period();
  const std::int64_t checked = std::max(limit, to_int64(checked_mul(2, report.period)));
  const auto verdict = partition_check(pair, checked);
  if (!verdict.ok()) throw PartitionError(verdict);
  report.exact = verdict.exact;

  const auto full = word_from_pair(pair, report.period);
  report.word = full;
  const auto p = static_cast<std::size_t>(report.period);

  report.symmetric = true;
  for (std::size_t m = 0; m < p; ++m) {
    if (full[m] != full[p - 1 - m]) {
      report.symmetric = false;
      break;
    }
  }

  const int k = static_cast<int>(pair.k());
  for (int letter = 1; letter <= k; ++letter) {
    std::vector<std::size_t> at;
    for (std::size_t j = 0; j < p; ++j) {
      if (full[j] == letter) at.push_back(j);
    }
    bool found = false;
    for (std::size_t idx = 0; idx < at.size() && !found; ++idx) {
      const std::size_t from = at[idx];
      const std::size_t to = idx + 1 < at.size() ? at[idx + 1] : at.front() + p;
      bool clean = true;
      for (std::size_t j = from + 1; j < to; ++j) {
        if (full[j % p] > letter) {
          clean = false;
          break;
        }
      }
      found = clean;
    }
    report.consecutive_condition.push_back(found);
  }

  const BalancedWord word(full);
  report.densities = densities(word);
  report.densities_match_alphas = report.densities.size() == pair.k();
  for (std::size_t i = 0; report.densities_match_alphas && i < pair.k(); ++i) {
    report.densities_match_alphas = report.densities[i] * pair.alphas[i] == Rational(1);
  }
  report.balanced = balanced_check(word).balanced;
  if (k >= 3 && k <= 62) {
    const auto power = power_tuple(k);
    report.power = std::equal(report.densities.begin(), report.densities.end(), power.distances().begin(),
                              power.distances().end());
  }
  return report;
}

}  // namespace ramsey
