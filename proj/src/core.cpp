#include "ramsey/core.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>

namespace ramsey {

namespace {

std::vector<std::string_view> split_commas(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  int column = 1;
  for (auto token : split_commas(text)) {
    try {
      out.push_back(Rational::parse(token));
    } catch (const ParseError& e) {
      throw ParseError(e.message(), 1, column + e.column() - 1);
    }
    column += static_cast<int>(token.size()) + 1;
  }
  return out;
}

std::vector<std::int64_t> parse_integer_list(std::string_view text) {
  std::vector<std::int64_t> out;
  int column = 1;
  for (auto raw : split_commas(text)) {
    const auto token = trim(raw);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
      throw ParseError("invalid integer '" + std::string(raw) + "'", 1, column);
    }
    out.push_back(value);
    column += static_cast<int>(raw.size()) + 1;
  }
  return out;
}

DistanceTuple::DistanceTuple(std::vector<Rational> distances) : d_(std::move(distances)) {
  if (d_.size() < 3) throw DomainError("a distance tuple needs k >= 3 entries");
  Rational total = 0;
  for (const auto& x : d_) {
    if (x.sign() <= 0) throw DomainError("distance " + x.str() + " is not positive");
    total += x;
  }
  if (total != Rational(1)) throw DomainError("distances sum to " + total.str() + ", not 1");
  std::sort(d_.begin(), d_.end(), std::greater<>());
}

DistanceTuple DistanceTuple::parse(std::string_view text) { return DistanceTuple(parse_rational_list(text)); }

std::int64_t DistanceTuple::common_denominator() const {
  BigInt l = 1;
  for (const auto& x : d_) l = lcm(l, x.den());
  return to_int64(l);
}

bool DistanceTuple::is_power() const {
  if (k() > 62) return false;
  return *this == power_tuple(static_cast<int>(k()));
}

std::string DistanceTuple::str() const {
  std::string out;
  for (std::size_t i = 0; i < d_.size(); ++i) {
    if (i) out += ',';
    out += d_[i].str();
  }
  return out;
}

DiscreteInstance DiscreteInstance::make(std::int64_t n, std::vector<std::int64_t> gaps) {
  if (n <= 0) throw DomainError("instance size n must be positive");
  if (gaps.empty()) throw DomainError("instance needs at least one gap");
  BigInt total = 0;
  for (auto g : gaps) {
    if (g < 1) throw DomainError("gap " + std::to_string(g) + " is not positive");
    total += g;
  }
  if (total != n) {
    throw DomainError("gaps sum to " + to_string(total) + " but n = " + std::to_string(n));
  }
  return DiscreteInstance{n, std::move(gaps)};
}

DistanceTuple power_tuple(int k) {
  if (k < 3) throw DomainError("the (k,2)-power needs k >= 3");
  if (k > 62) throw DomainError("k too large for exact 64-bit grids");
  const BigInt denom = (BigInt{1} << k) - 1;
  std::vector<Rational> d;
  for (int i = 1; i <= k; ++i) d.emplace_back(BigInt{1} << (k - i), denom);
  return DistanceTuple(std::move(d));
}

DiscreteInstance power_instance(int k) { return discretize(power_tuple(k)); }

DiscreteInstance discretize(const DistanceTuple& d, std::int64_t multiplier) {
  if (multiplier < 1) throw DomainError("multiplier must be positive");
  const BigInt n = checked_mul(d.common_denominator(), multiplier);
  std::vector<std::int64_t> gaps;
  for (const auto& x : d.distances()) gaps.push_back(to_int64(checked_mul(x.num(), n / x.den())));
  return DiscreteInstance::make(to_int64(n), std::move(gaps));
}

std::string_view colour_name(Colour c) { return c == Colour::Red ? "red" : "blue"; }

Colouring::Colouring(std::int64_t n, Colour fill) {
  if (n <= 0) throw DomainError("colouring size must be positive");
  colours_.assign(static_cast<std::size_t>(n), static_cast<std::uint8_t>(fill));
}

Colouring Colouring::from_string(std::string_view rb) {
  if (rb.empty()) throw DomainError("empty colouring string");
  Colouring c(static_cast<std::int64_t>(rb.size()), Colour::Blue);
  for (std::size_t i = 0; i < rb.size(); ++i) {
    if (rb[i] == 'R') {
      c.colours_[i] = 1;
    } else if (rb[i] != 'B') {
      throw ParseError(std::string("invalid colour character '") + rb[i] + "'", 1, static_cast<int>(i) + 1);
    }
  }
  return c;
}

void Colouring::set(std::int64_t v, Colour c) {
  if (v < 0 || v >= n()) throw DomainError("vertex " + std::to_string(v) + " out of range");
  colours_[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(c);
}

void Colouring::set_black(std::optional<std::int64_t> v) {
  if (v && (*v < 0 || *v >= n())) throw DomainError("black vertex " + std::to_string(*v) + " out of range");
  black_ = v;
}

std::int64_t Colouring::count(Colour c) const {
  return std::count(colours_.begin(), colours_.end(), static_cast<std::uint8_t>(c));
}

Colouring Colouring::rotated(std::int64_t r) const {
  const std::int64_t size = n();
  r = ((r % size) + size) % size;
  Colouring out = *this;
  for (std::int64_t v = 0; v < size; ++v) out.colours_[static_cast<std::size_t>((v + r) % size)] = colours_[static_cast<std::size_t>(v)];
  if (black_) out.black_ = (*black_ + r) % size;
  return out;
}

Colouring Colouring::swapped() const {
  Colouring out = *this;
  for (auto& x : out.colours_) x ^= 1;
  return out;
}

std::string Colouring::str() const {
  std::string s;
  s.reserve(colours_.size());
  for (auto x : colours_) s.push_back(x ? 'R' : 'B');
  return s;
}

Colouring parse_colouring(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = nl + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw ParseError("empty colouring file", 1, 1);
  if (lines.size() < 2) throw ParseError("missing colour line", 2, 1);
  if (lines.size() > 3) throw ParseError("unexpected extra line", 4, 1);

  std::int64_t n = 0;
  {
    const auto tok = lines[0];
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), n);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ParseError("first line must be the decimal vertex count", 1, 1);
    }
    if (n <= 0) throw ParseError("vertex count must be positive", 1, 1);
  }
  const auto row = lines[1];
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i] != 'R' && row[i] != 'B') {
      throw ParseError(std::string("invalid colour character '") + row[i] + "'", 2, static_cast<int>(i) + 1);
    }
  }
  if (static_cast<std::int64_t>(row.size()) != n) {
    throw ParseError("colour line has length " + std::to_string(row.size()) + " but n = " + std::to_string(n), 2,
                     static_cast<int>(row.size()) + 1);
  }
  Colouring c = Colouring::from_string(row);
  if (lines.size() == 3) {
    const auto line = lines[2];
    constexpr std::string_view prefix = "black ";
    if (line.substr(0, prefix.size()) != prefix) throw ParseError("expected 'black <index>'", 3, 1);
    const auto tok = line.substr(prefix.size());
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ParseError("invalid black vertex index", 3, static_cast<int>(prefix.size()) + 1);
    }
    if (v < 0 || v >= n) throw ParseError("black vertex out of range", 3, static_cast<int>(prefix.size()) + 1);
    c.set_black(v);
  }
  return c;
}

std::string serialize_colouring(const Colouring& c) {
  std::string out = std::to_string(c.n()) + "\n" + c.str() + "\n";
  if (c.black()) out += "black " + std::to_string(*c.black()) + "\n";
  return out;
}

}  // namespace ramsey
