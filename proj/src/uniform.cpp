#include "ramsey/uniform.hpp"

#include <algorithm>
#include <map>

#include "ramsey/parallel.hpp"

namespace ramsey {

Colouring uniform_colouring(std::int64_t t, std::int64_t grid) {
  if (t < 1) throw DomainError("t must be positive");
  if (grid < 1 || grid % (2 * t) != 0) {
    throw DomainError("grid " + std::to_string(grid) + " is not a positive multiple of 2t = " + std::to_string(2 * t));
  }
  const std::int64_t block = grid / (2 * t);
  Colouring c(grid, Colour::Blue);
  for (std::int64_t v = 0; v < grid; ++v) {
    if ((v / block) % 2 == 0) c.set(v, Colour::Red);
  }
  return c;
}

std::pair<Colouring, DiscreteInstance> discretize_uniform(const DistanceTuple& d, std::int64_t t) {
  if (t < 1) throw DomainError("t must be positive");
  const std::int64_t base = d.common_denominator();
  const std::int64_t grid = to_int64(lcm(checked_mul(2, t), base));
  return {uniform_colouring(t, grid), discretize(d, grid / base)};
}

JumpResult jump_counts(const DistanceTuple& d, std::int64_t t) {
  if (t < 1) throw DomainError("t must be positive");
  JumpResult out;
  BigInt total = 0;
  for (std::size_t i = 0; i < d.k(); ++i) {
    const Rational x = Rational(t) * d[i];
    if (x.is_half_integer()) {
      out.counts.clear();
      out.blocked = i;
      return out;
    }
    const BigInt nearest = (x + Rational(1, 2)).floor();
    out.counts.push_back(to_int64(nearest));
    total += nearest;
  }
  out.identity_holds = total == t;
  return out;
}

ResidueInstance ResidueInstance::make(int k, std::int64_t t) {
  if (k < 3) throw DomainError("k must be at least 3");
  if (k > 30) throw DomainError("k too large for the residue search");
  if (t < 1) throw DomainError("t must be positive");
  ResidueInstance inst;
  inst.k = k;
  inst.window = (std::int64_t{1} << k) - 1;
  inst.m = 2 * inst.window;
  const std::int64_t base = t % inst.m;
  std::int64_t jump = base;
  for (int i = 1; i <= k; ++i) {
    jump = (2 * jump) % inst.m;
    inst.jumps.push_back(jump);
  }
  return inst;
}

std::vector<std::int64_t> ResidueInstance::signed_jumps() const {
  std::vector<std::int64_t> out;
  for (auto j : jumps) {
    if (j == window) throw Error("jump residue equals 2^k - 1; the residue reduction is inconsistent");
    out.push_back(j > window ? j - m : j);
  }
  return out;
}

namespace {

class ChainSearch {
 public:
  explicit ChainSearch(const ResidueInstance& inst)
      : inst_(inst), full_((std::uint32_t{1} << inst.k) - 1), stamp_(static_cast<std::size_t>(full_) + 1, 0) {}

  std::optional<std::vector<std::size_t>> from(std::int64_t start) {
    ++generation_;
    start_ = start;
    order_.clear();
    if (extend(0, start)) return order_;
    return std::nullopt;
  }

 private:
  bool extend(std::uint32_t used, std::int64_t pos) {
    if (used == full_) return true;
    if (stamp_[used] == generation_) return false;
    for (std::size_t i = 0; i < inst_.jumps.size(); ++i) {
      const std::uint32_t bit = std::uint32_t{1} << i;
      if (used & bit) continue;
      const std::int64_t next = (pos + inst_.jumps[i]) % inst_.m;
      if (!inst_.red(next)) continue;
      order_.push_back(i);
      if (extend(used | bit, next)) return true;
      order_.pop_back();
    }
    stamp_[used] = generation_;
    return false;
  }

  const ResidueInstance& inst_;
  std::uint32_t full_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t generation_ = 0;
  std::int64_t start_ = 0;
  std::vector<std::size_t> order_;
};

}  // namespace

std::optional<ResidueWitness> residue_check(const ResidueInstance& inst) {
  if (inst.k > 26) throw DomainError("residue search supports k <= 26");
  ChainSearch search(inst);
  for (std::int64_t start = 0; start < inst.window; ++start) {
    auto order = search.from(start);
    if (!order) continue;
    ResidueWitness w;
    w.start = start;
    w.positions.push_back(start);
    std::int64_t pos = start;
    for (auto i : *order) {
      w.chain.push_back(inst.jumps[i]);
      pos = (pos + inst.jumps[i]) % inst.m;
      w.positions.push_back(pos);
    }
    return w;
  }
  return std::nullopt;
}

std::optional<ResidueWitness> residue_check(int k, std::int64_t t) { return residue_check(ResidueInstance::make(k, t)); }

ResidueSweepResult residue_sweep(int k, std::int64_t max_t, unsigned workers) {
  if (max_t < 1) throw DomainError("max_t must be positive");
  std::map<std::vector<std::int64_t>, std::size_t> class_of;
  std::vector<ResidueInstance> representatives;
  std::vector<std::size_t> assignment;
  for (std::int64_t t = 1; t <= max_t; ++t) {
    auto inst = ResidueInstance::make(k, t);
    auto key = inst.jumps;
    std::sort(key.begin(), key.end());
    auto [it, inserted] = class_of.emplace(std::move(key), representatives.size());
    if (inserted) representatives.push_back(std::move(inst));
    assignment.push_back(it->second);
  }
  std::vector<std::uint8_t> ok(representatives.size(), 0);
  parallel_for(representatives.size(), workers,
               [&](std::size_t i) { ok[i] = residue_check(representatives[i]).has_value() ? 1 : 0; });
  ResidueSweepResult result;
  result.checked = max_t;
  for (std::int64_t t = 1; t <= max_t; ++t) {
    if (!ok[assignment[static_cast<std::size_t>(t - 1)]]) result.failures.push_back(t);
  }
  return result;
}

std::optional<std::int64_t> nonpower_witness(const DistanceTuple& d, std::int64_t max_t) {
  for (std::int64_t t = 1; t <= max_t; ++t) {
    if (jump_counts(d, t).blocked) return t;
    const auto [colouring, inst] = discretize_uniform(d, t);
    if (!detect(colouring, inst)) return t;
  }
  return std::nullopt;
}

}  // namespace ramsey
