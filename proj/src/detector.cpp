#include "ramsey/detector.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ramsey/parallel.hpp"

namespace ramsey {

namespace {

void require_match(const Colouring& c, const DiscreteInstance& inst) {
  if (c.n() != inst.n) {
    throw DomainError("colouring has n = " + std::to_string(c.n()) + " but the instance has n = " +
                      std::to_string(inst.n));
  }
}

std::vector<Colour> classes_for(ClassFilter filter) {
  switch (filter) {
    case ClassFilter::RedOnly:
      return {Colour::Red};
    case ClassFilter::BlueOnly:
      return {Colour::Blue};
    case ClassFilter::Both:
      break;
  }
  return {Colour::Red, Colour::Blue};
}

WitnessColour label(const Colouring& c, Colour cls, const std::vector<std::int64_t>& vertices) {
  const bool uses_black = c.black() && std::find(vertices.begin(), vertices.end(), *c.black()) != vertices.end();
  if (cls == Colour::Red) return uses_black ? WitnessColour::RedOrBlack : WitnessColour::Red;
  return uses_black ? WitnessColour::BlueOrBlack : WitnessColour::Blue;
}

CopyWitness make_witness(const Colouring& c, std::int64_t start, std::vector<std::int64_t> order, Colour cls) {
  CopyWitness w;
  w.gap_order = std::move(order);
  std::int64_t pos = start;
  for (auto g : w.gap_order) {
    w.vertices.push_back(pos);
    pos = (pos + g) % c.n();
  }
  w.colour = label(c, cls, w.vertices);
  return w;
}

// Keeps the lexicographically smaller (start, order) candidate; Red wins ties
// because it is offered first.
void keep_best(std::optional<CopyWitness>& best, CopyWitness candidate) {
  if (!best) {
    best = std::move(candidate);
    return;
  }
  const auto key = [](const CopyWitness& w) { return std::tie(w.vertices.front(), w.gap_order); };
  if (key(candidate) < key(*best)) best = std::move(candidate);
}

// Depth-first enumeration of gap orders from one start vertex, gap values in
// ascending order, pruning as soon as a vertex leaves the colour class.
class OrderSearch {
 public:
  OrderSearch(const Colouring& c, const DiscreteInstance& inst, const CyclicOrderSet* restriction)
      : c_(c), n_(inst.n), k_(inst.k()), restriction_(restriction) {
    std::vector<std::int64_t> sorted = inst.gaps;
    std::sort(sorted.begin(), sorted.end());
    for (auto g : sorted) {
      if (values_.empty() || values_.back() != g) {
        values_.push_back(g);
        remaining_.push_back(0);
      }
      ++remaining_.back();
    }
    counts_ = remaining_;
  }

  std::optional<std::vector<std::int64_t>> first_from(std::int64_t start, Colour cls) {
    start_ = start;
    cls_ = cls;
    order_.clear();
    remaining_ = counts_;
    if (!c_.in_class(start, cls)) return std::nullopt;
    if (descend(start)) return order_;
    return std::nullopt;
  }

 private:
  bool descend(std::int64_t pos) {
    if (order_.size() == k_) {
      return restriction_ == nullptr || restriction_->contains(order_);
    }
    const bool last = order_.size() + 1 == k_;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (remaining_[i] == 0) continue;
      const std::int64_t next = (pos + values_[i]) % n_;
      if (!last && !c_.in_class(next, cls_)) continue;
      --remaining_[i];
      order_.push_back(values_[i]);
      const bool found = descend(next);
      if (found) return true;
      order_.pop_back();
      ++remaining_[i];
    }
    return false;
  }

  const Colouring& c_;
  std::int64_t n_;
  std::size_t k_;
  const CyclicOrderSet* restriction_;
  std::vector<std::int64_t> values_;
  std::vector<int> counts_;
  std::vector<int> remaining_;
  std::vector<std::int64_t> order_;
  std::int64_t start_ = 0;
  Colour cls_ = Colour::Red;
};

// reach[mask * n + x] == 1 iff there is a path x -> x + length(mask) through
// the colour class that uses exactly the gaps in mask.
class PathTable {
 public:
  PathTable(const Colouring& c, const SubsetSumTable& table, Colour cls)
      : n_(table.n()), k_(table.k()), table_(table) {
    const std::size_t n = static_cast<std::size_t>(n_);
    const std::uint32_t full = table.full_mask();
    reach_.assign((static_cast<std::size_t>(full) + 1) * n, 0);
    std::vector<std::uint8_t> member(n);
    for (std::size_t x = 0; x < n; ++x) member[x] = c.in_class(static_cast<std::int64_t>(x), cls) ? 1 : 0;
    std::copy(member.begin(), member.end(), reach_.begin());

    // Subsets by increasing size, so that every mask with one gap removed is
    // already filled in.
    std::vector<std::uint32_t> masks(full);
    std::iota(masks.begin(), masks.end(), 1u);
    std::stable_sort(masks.begin(), masks.end(),
                     [](std::uint32_t a, std::uint32_t b) { return __builtin_popcount(a) < __builtin_popcount(b); });

    for (auto mask : masks) {
      std::uint8_t* row = &reach_[mask * n];
      for (std::size_t bit = 0; bit < k_; ++bit) {
        if (!(mask >> bit & 1u)) continue;
        const std::uint8_t* prev = &reach_[(mask ^ (1u << bit)) * n];
        for (std::size_t x = 0; x < n; ++x) row[x] |= prev[x];
      }
      const std::size_t shift = static_cast<std::size_t>(table.length_of(mask) % n_);
      for (std::size_t x = 0; x < n; ++x) {
        std::size_t end = x + shift;
        if (end >= n) end -= n;
        row[x] &= member[end];
      }
    }
  }

  bool closes_at(std::int64_t start) const { return at(table_.full_mask(), start); }

  bool at(std::uint32_t mask, std::int64_t x) const {
    return reach_[static_cast<std::size_t>(mask) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(x)] != 0;
  }

  // Lexicographically smallest gap order of a copy starting at `start`,
  // following the table forward one gap at a time.
  std::vector<std::int64_t> order_from(std::int64_t start, const std::vector<std::int64_t>& gaps,
                                       const std::vector<std::size_t>& by_value) const {
    std::vector<std::int64_t> order;
    std::uint32_t used = 0;
    std::int64_t pos = start;
    const std::uint32_t full = table_.full_mask();
    for (std::size_t step = 0; step < k_; ++step) {
      for (auto idx : by_value) {
        const std::uint32_t bit = 1u << idx;
        if (used & bit) continue;
        const std::int64_t next = (pos + gaps[idx]) % n_;
        if (at(full ^ (used | bit), next)) {
          used |= bit;
          order.push_back(gaps[idx]);
          pos = next;
          break;
        }
      }
    }
    return order;
  }

 private:
  std::int64_t n_;
  std::size_t k_;
  const SubsetSumTable& table_;
  std::vector<std::uint8_t> reach_;
};

constexpr std::size_t kMaxDpCells = std::size_t{1} << 27;

std::string describe_mask(const std::vector<std::int64_t>& gaps, std::uint32_t mask) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    if (!(mask >> i & 1u)) continue;
    out << (first ? "" : ",") << gaps[i];
    first = false;
  }
  out << '}';
  return out.str();
}

}  // namespace

std::string_view witness_colour_name(WitnessColour c) {
  switch (c) {
    case WitnessColour::Red:
      return "red";
    case WitnessColour::Blue:
      return "blue";
    case WitnessColour::RedOrBlack:
      return "red-or-black";
    case WitnessColour::BlueOrBlack:
      return "blue-or-black";
  }
  return "?";
}

std::vector<std::int64_t> CyclicOrderSet::canonical(std::vector<std::int64_t> order) {
  std::vector<std::int64_t> best = order;
  for (std::size_t r = 1; r < order.size(); ++r) {
    std::rotate(order.begin(), order.begin() + 1, order.end());
    if (order < best) best = order;
  }
  return best;
}

void CyclicOrderSet::add(std::vector<std::int64_t> order) { orders_.insert(canonical(std::move(order))); }

bool CyclicOrderSet::contains(const std::vector<std::int64_t>& order) const {
  return orders_.count(canonical(order)) != 0;
}

bool CyclicOrderSet::is_subset_of(const CyclicOrderSet& other) const {
  return std::includes(other.orders_.begin(), other.orders_.end(), orders_.begin(), orders_.end());
}

CyclicOrderSet CyclicOrderSet::parse(std::string_view text, const DiscreteInstance& inst) {
  CyclicOrderSet out;
  std::vector<std::int64_t> expected = inst.gaps;
  std::sort(expected.begin(), expected.end());
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(start, nl - start);
    ++line_no;
    start = nl + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\r' || line.back() == '\t')) line.remove_suffix(1);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    if (line.empty()) {
      if (nl == text.size()) break;
      continue;
    }
    std::vector<std::int64_t> order;
    try {
      order = parse_integer_list(line);
    } catch (const ParseError& e) {
      throw ParseError("invalid cyclic order", line_no, e.column());
    }
    std::vector<std::int64_t> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != expected) throw ParseError("cyclic order is not a permutation of the gaps", line_no, 1);
    out.add(std::move(order));
    if (nl == text.size()) break;
  }
  return out;
}

bool SubsetSumTable::has_distinct_subset_sums(const DiscreteInstance& inst) {
  if (inst.k() > 30) return false;
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(inst.n) + 1, 0);
  const std::uint32_t full = (std::uint32_t{1} << inst.k()) - 1;
  for (std::uint32_t mask = 0;; ++mask) {
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < inst.k(); ++i) {
      if (mask >> i & 1u) sum += inst.gaps[i];
    }
    if (seen[static_cast<std::size_t>(sum)]++) return false;
    if (mask == full) break;
  }
  return true;
}

SubsetSumTable::SubsetSumTable(const DiscreteInstance& inst) : n_(inst.n), k_(inst.k()) {
  if (k_ > 24) throw PreconditionError("subset-sum table supports at most 24 gaps");
  const std::uint32_t full = full_mask();
  b_.assign(static_cast<std::size_t>(n_) + 1, 0);
  s_.assign(static_cast<std::size_t>(n_) + 1, 0);
  sum_of_mask_.assign(static_cast<std::size_t>(full) + 1, 0);
  std::vector<std::uint8_t> taken(static_cast<std::size_t>(n_) + 1, 0);
  for (std::uint32_t mask = 0;; ++mask) {
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < k_; ++i) {
      if (mask >> i & 1u) sum += inst.gaps[i];
    }
    sum_of_mask_[mask] = sum;
    const auto l = static_cast<std::size_t>(sum);
    if (taken[l]) {
      throw PreconditionError("subset sums are not pairwise distinct: " + describe_mask(inst.gaps, s_[l]) +
                              " and " + describe_mask(inst.gaps, mask) + " both sum to " + std::to_string(sum));
    }
    taken[l] = 1;
    b_[l] = static_cast<std::uint8_t>(__builtin_popcount(mask));
    s_[l] = mask;
    if (mask == full) break;
  }
}

std::optional<CopyWitness> detect_bruteforce(const Colouring& c, const DiscreteInstance& inst,
                                             const CyclicOrderSet* restriction, ClassFilter filter, unsigned workers) {
  require_match(c, inst);
  const auto classes = classes_for(filter);
  auto from = [&](OrderSearch& search, std::int64_t start) {
    std::optional<CopyWitness> best;
    for (auto cls : classes) {
      if (auto order = search.first_from(start, cls)) keep_best(best, make_witness(c, start, std::move(*order), cls));
    }
    return best;
  };
  if (workers <= 1) {
    OrderSearch search(c, inst, restriction);
    for (std::int64_t start = 0; start < inst.n; ++start) {
      if (auto best = from(search, start)) return best;
    }
    return std::nullopt;
  }

  constexpr std::int64_t kChunk = 64;
  const auto chunks = static_cast<std::size_t>((inst.n + kChunk - 1) / kChunk);
  std::vector<std::optional<CopyWitness>> found(chunks);
  const auto hit = parallel_find_first(chunks, workers, [&](std::size_t chunk) {
    OrderSearch search(c, inst, restriction);
    const std::int64_t begin = static_cast<std::int64_t>(chunk) * kChunk;
    const std::int64_t end = std::min(inst.n, begin + kChunk);
    for (std::int64_t start = begin; start < end; ++start) {
      if (auto best = from(search, start)) {
        found[chunk] = std::move(best);
        return true;
      }
    }
    return false;
  });
  if (!hit) return std::nullopt;
  return found[*hit];
}

std::optional<CopyWitness> detect_dp(const Colouring& c, const DiscreteInstance& inst, ClassFilter filter) {
  require_match(c, inst);
  const SubsetSumTable table(inst);
  if ((static_cast<std::size_t>(table.full_mask()) + 1) * static_cast<std::size_t>(inst.n) > kMaxDpCells) {
    throw PreconditionError("dynamic-programming table too large for this instance");
  }
  std::vector<std::size_t> by_value(inst.k());
  std::iota(by_value.begin(), by_value.end(), 0);
  std::stable_sort(by_value.begin(), by_value.end(),
                   [&](std::size_t a, std::size_t b) { return inst.gaps[a] < inst.gaps[b]; });

  std::optional<CopyWitness> best;
  for (auto cls : classes_for(filter)) {
    const PathTable paths(c, table, cls);
    const std::int64_t limit = best ? best->vertices.front() + 1 : inst.n;
    for (std::int64_t start = 0; start < limit; ++start) {
      if (!paths.closes_at(start)) continue;
      keep_best(best, make_witness(c, start, paths.order_from(start, inst.gaps, by_value), cls));
      break;
    }
  }
  return best;
}

std::optional<CopyWitness> detect(const Colouring& c, const DiscreteInstance& inst, ClassFilter filter) {
  if (inst.k() <= 20 && (std::size_t{1} << inst.k()) * static_cast<std::size_t>(inst.n) <= kMaxDpCells &&
      SubsetSumTable::has_distinct_subset_sums(inst)) {
    return detect_dp(c, inst, filter);
  }
  return detect_bruteforce(c, inst, nullptr, filter);
}

std::vector<std::vector<std::int64_t>> enumerate_copies(const DiscreteInstance& inst) {
  std::vector<std::int64_t> rest = inst.gaps;
  std::sort(rest.begin(), rest.end());
  if (std::adjacent_find(rest.begin(), rest.end()) != rest.end()) {
    throw PreconditionError("copy enumeration needs pairwise distinct gaps");
  }
  const std::int64_t largest = rest.back();
  rest.pop_back();
  std::vector<std::vector<std::int64_t>> copies;
  for (std::int64_t s = 0; s < inst.n; ++s) {
    std::sort(rest.begin(), rest.end());
    do {
      std::vector<std::int64_t> vertices{s};
      std::int64_t pos = (s + largest) % inst.n;
      for (auto g : rest) {
        vertices.push_back(pos);
        pos = (pos + g) % inst.n;
      }
      copies.push_back(std::move(vertices));
    } while (std::next_permutation(rest.begin(), rest.end()));
  }
  return copies;
}

CopyCounts count_copies(const Colouring& c, const DiscreteInstance& inst) {
  require_match(c, inst);
  if (c.black()) throw PreconditionError("copy counting does not accept a black vertex");
  CopyCounts counts;
  for (const auto& copy : enumerate_copies(inst)) {
    const bool red = c.is_red(copy.front());
    if (std::all_of(copy.begin(), copy.end(), [&](std::int64_t v) { return c.is_red(v) == red; })) {
      ++(red ? counts.red : counts.blue);
    }
  }
  return counts;
}

bool validate_witness(const Colouring& c, const DiscreteInstance& inst, const CopyWitness& w) {
  if (c.n() != inst.n) return false;
  const std::size_t k = inst.k();
  if (w.vertices.size() != k || w.gap_order.size() != k) return false;
  std::vector<std::int64_t> a = w.gap_order;
  std::vector<std::int64_t> b = inst.gaps;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) return false;
  for (std::size_t i = 0; i < k; ++i) {
    const auto v = w.vertices[i];
    if (v < 0 || v >= inst.n) return false;
    if ((v + w.gap_order[i]) % inst.n != w.vertices[(i + 1) % k]) return false;
  }
  const bool red_class = w.colour == WitnessColour::Red || w.colour == WitnessColour::RedOrBlack;
  const bool wants_black = w.colour == WitnessColour::RedOrBlack || w.colour == WitnessColour::BlueOrBlack;
  const bool has_black =
      c.black() && std::find(w.vertices.begin(), w.vertices.end(), *c.black()) != w.vertices.end();
  if (wants_black != has_black) return false;
  const Colour cls = red_class ? Colour::Red : Colour::Blue;
  return std::all_of(w.vertices.begin(), w.vertices.end(), [&](std::int64_t v) { return c.in_class(v, cls); });
}

}  // namespace ramsey
