#include "ramsey/rational.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace ramsey {

ParseError::ParseError(const std::string& what, int line, int column)
    : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
      message_(what),
      line_(line),
      column_(column) {}

std::string to_string(BigInt value) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  std::string digits;
  // Work with negative remainders so that the minimum value is handled.
  while (value != 0) {
    const int digit = static_cast<int>(value % 10);
    digits.push_back(static_cast<char>('0' + (digit < 0 ? -digit : digit)));
    value /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

std::int64_t to_int64(BigInt value) {
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < std::numeric_limits<std::int64_t>::min()) {
    throw OverflowError("value " + to_string(value) + " does not fit in 64 bits");
  }
  return static_cast<std::int64_t>(value);
}

BigInt checked_add(BigInt a, BigInt b) {
  BigInt r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("128-bit overflow in addition");
  return r;
}

BigInt checked_sub(BigInt a, BigInt b) {
  BigInt r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("128-bit overflow in subtraction");
  return r;
}

BigInt checked_mul(BigInt a, BigInt b) {
  BigInt r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit overflow in multiplication");
  return r;
}

BigInt gcd(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const BigInt r = a % b;
    a = b;
    b = r;
  }
  return a;
}

BigInt lcm(BigInt a, BigInt b) {
  if (a == 0 || b == 0) return 0;
  const BigInt g = gcd(a, b);
  BigInt r = checked_mul(a / g, b);
  return r < 0 ? -r : r;
}

BigInt floor_div(BigInt a, BigInt b) {
  if (b == 0) throw DomainError("division by zero");
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Rational::Rational(std::int64_t value) : num_(value), den_(1) {}

Rational::Rational(BigInt num, BigInt den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  if (den < 0) {
    num = checked_sub(0, num);
    den = checked_sub(0, den);
  }
  const BigInt g = gcd(num, den);
  num_ = g == 0 ? 0 : num / g;
  den_ = g == 0 ? 1 : den / g;
}

Rational Rational::parse(std::string_view text) {
  auto fail = [&](const std::string& why, std::size_t pos) -> Rational {
    throw ParseError("invalid rational '" + std::string(text) + "': " + why, 1,
                     static_cast<int>(pos) + 1);
  };
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return fail("empty", 0);

  for (std::size_t i = 0; i < text.size(); ++i) {
    if (std::isalpha(static_cast<unsigned char>(text[i]))) {
      return fail("only exact rationals are accepted; tuples with an irrational ratio are never "
                  "Ramsey (colour so that no two points at that distance share a colour)",
                  i);
    }
  }

  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  auto read_digits = [&](BigInt& value, BigInt& scale) {
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      value = checked_add(checked_mul(value, 10), text[pos] - '0');
      scale = checked_mul(scale, 10);
      ++pos;
    }
    return pos - start;
  };

  BigInt whole = 0;
  BigInt unused = 1;
  const std::size_t int_digits = read_digits(whole, unused);
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    BigInt frac = 0;
    BigInt scale = 1;
    const std::size_t frac_digits = read_digits(frac, scale);
    if (int_digits + frac_digits == 0) return fail("no digits", pos);
    if (pos != text.size()) return fail("unexpected character", pos);
    const BigInt num = checked_add(checked_mul(whole, scale), frac);
    return Rational(negative ? -num : num, scale);
  }
  if (int_digits == 0) return fail("expected digits", pos);
  BigInt den = 1;
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    den = 0;
    BigInt scale = 1;
    if (read_digits(den, scale) == 0) return fail("expected denominator digits", pos);
    if (den == 0) return fail("zero denominator", pos);
  }
  if (pos != text.size()) return fail("unexpected character", pos);
  return Rational(negative ? -whole : whole, den);
}

std::string Rational::str() const {
  if (den_ == 1) return to_string(num_);
  return to_string(num_) + "/" + to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  const BigInt g = gcd(a.den_, b.den_);
  const BigInt num = checked_add(checked_mul(a.num_, b.den_ / g), checked_mul(b.num_, a.den_ / g));
  return Rational(num, checked_mul(a.den_ / g, b.den_));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  const BigInt g1 = gcd(a.num_, b.den_);
  const BigInt g2 = gcd(b.num_, a.den_);
  const BigInt n1 = g1 == 0 ? a.num_ : a.num_ / g1;
  const BigInt d2 = g1 == 0 ? b.den_ : b.den_ / g1;
  const BigInt n2 = g2 == 0 ? b.num_ : b.num_ / g2;
  const BigInt d1 = g2 == 0 ? a.den_ : a.den_ / g2;
  return Rational(checked_mul(n1, n2), checked_mul(d1, d2));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw DomainError("division by zero rational");
  return a * Rational(b.den_, b.num_);
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = checked_sub(0, num_);
  r.den_ = den_;
  return r;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const BigInt lhs = checked_mul(a.num_, b.den_);
  const BigInt rhs = checked_mul(b.num_, a.den_);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace ramsey
