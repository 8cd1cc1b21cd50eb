#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ramsey {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside an operation's mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Input violates a documented precondition of an algorithm.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// An exact integer computation would not fit in 128 bits.
class OverflowError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column);

  int line() const { return line_; }
  int column() const { return column_; }
  /// The message without the position suffix.
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  int line_;
  int column_;
};

using BigInt = __int128;

std::string to_string(BigInt value);
std::int64_t to_int64(BigInt value);

BigInt checked_add(BigInt a, BigInt b);
BigInt checked_sub(BigInt a, BigInt b);
BigInt checked_mul(BigInt a, BigInt b);
BigInt gcd(BigInt a, BigInt b);
BigInt lcm(BigInt a, BigInt b);

// floor(a / b) for b != 0.
BigInt floor_div(BigInt a, BigInt b);

/// Exact fraction num/den, always stored reduced with den > 0.
///
/// Arithmetic is carried out in 128-bit integers; any intermediate result
/// that does not fit raises OverflowError instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t value);  // NOLINT: implicit integer promotion is intended
  Rational(BigInt num, BigInt den);

  /// Accepts "p/q", "p" and finite decimals such as "-0.9".
  static Rational parse(std::string_view text);

  BigInt num() const { return num_; }
  BigInt den() const { return den_; }

  BigInt floor() const { return floor_div(num_, den_); }
  BigInt ceil() const { return -floor_div(-num_, den_); }
  bool is_integer() const { return den_ == 1; }
  bool is_half_integer() const { return den_ == 2; }
  int sign() const { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }
  Rational abs() const { return num_ < 0 ? -*this : *this; }

  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  BigInt num_ = 0;
  BigInt den_ = 1;
};

}  // namespace ramsey
