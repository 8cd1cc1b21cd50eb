#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ramsey/rational.hpp"

namespace ramsey {

/// Comma-separated list of exact rationals, e.g. "4/7,2/7,1/7".
std::vector<Rational> parse_rational_list(std::string_view text);

/// Comma-separated list of integers, e.g. "4,2,1".
std::vector<std::int64_t> parse_integer_list(std::string_view text);

/// A k-tuple of arc lengths on the unit-perimeter circle.
///
/// Construction sorts the distances into non-increasing order and checks
/// that there are at least three of them, all positive, summing to exactly 1.
class DistanceTuple {
 public:
  explicit DistanceTuple(std::vector<Rational> distances);
  static DistanceTuple parse(std::string_view text);

  std::size_t k() const { return d_.size(); }
  const Rational& operator[](std::size_t i) const { return d_[i]; }
  std::span<const Rational> distances() const { return d_; }

  /// lcm of the reduced denominators: the smallest grid the tuple lives on.
  std::int64_t common_denominator() const;

  /// True iff this is the (k,2)-power 2^{k-i}/(2^k-1).
  bool is_power() const;

  std::string str() const;

  friend bool operator==(const DistanceTuple&, const DistanceTuple&) = default;

 private:
  std::vector<Rational> d_;
};

/// A gap tuple over Z_n: k positive integers summing to n.
struct DiscreteInstance {
  std::int64_t n = 0;
  std::vector<std::int64_t> gaps;

  static DiscreteInstance make(std::int64_t n, std::vector<std::int64_t> gaps);

  std::size_t k() const { return gaps.size(); }
  friend bool operator==(const DiscreteInstance&, const DiscreteInstance&) = default;
};

/// d_i = 2^{k-i} / (2^k - 1) for i = 1..k.
DistanceTuple power_tuple(int k);

/// Gaps (2^{k-1}, ..., 2, 1) over n = 2^k - 1.
DiscreteInstance power_instance(int k);

/// Scales the tuple onto Z_n with n = lcm(denominators) * multiplier.
DiscreteInstance discretize(const DistanceTuple& d, std::int64_t multiplier = 1);

enum class Colour : std::uint8_t { Blue = 0, Red = 1 };

inline Colour opposite(Colour c) { return c == Colour::Red ? Colour::Blue : Colour::Red; }
std::string_view colour_name(Colour c);

/// Two-colouring of Z_n. Vertex 0 sits at angle 0 and indices increase
/// counterclockwise. An optional black vertex is a wildcard that belongs to
/// both colour classes.
class Colouring {
 public:
  Colouring() = default;
  Colouring(std::int64_t n, Colour fill);
  /// From a string over {R, B}.
  static Colouring from_string(std::string_view rb);

  std::int64_t n() const { return static_cast<std::int64_t>(colours_.size()); }
  Colour colour(std::int64_t v) const { return static_cast<Colour>(colours_[static_cast<std::size_t>(v)]); }
  bool is_red(std::int64_t v) const { return colours_[static_cast<std::size_t>(v)] != 0; }
  void set(std::int64_t v, Colour c);

  std::optional<std::int64_t> black() const { return black_; }
  void set_black(std::optional<std::int64_t> v);

  /// Membership in the colour class, counting the black vertex in both.
  bool in_class(std::int64_t v, Colour c) const {
    return (black_ && *black_ == v) || colour(v) == c;
  }

  std::int64_t count(Colour c) const;

  /// Vertex v of the result has the colour of vertex v - r of this colouring.
  Colouring rotated(std::int64_t r) const;
  /// Red and Blue exchanged; the black vertex stays black.
  Colouring swapped() const;

  std::string str() const;

  friend bool operator==(const Colouring&, const Colouring&) = default;

 private:
  std::vector<std::uint8_t> colours_;
  std::optional<std::int64_t> black_;
};

/// Text format: line 1 is n, line 2 is n characters over {R, B}, optional
/// line 3 is "black <index>".
Colouring parse_colouring(std::string_view text);
std::string serialize_colouring(const Colouring& c);

}  // namespace ramsey
