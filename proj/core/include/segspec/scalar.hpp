#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace segspec {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// 128-bit binary mantissa.
using HighReal = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<128, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

inline constexpr int kHighRealBits = 128;

/// Exact rational or tagged high-precision real.
///
/// Arithmetic between exact values stays exact; anything touching a real
/// produces a real. The optional symbol (e.g. "sqrt(2)") is carried only for
/// display and is dropped by arithmetic.
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  Scalar(Rational q) : value_(std::move(q)) {}  // NOLINT: implicit by design of the tagged union
  Scalar(std::int64_t n) : value_(Rational(n)) {}  // NOLINT
  Scalar(int n) : value_(Rational(n)) {}  // NOLINT

  static Scalar ratio(std::int64_t num, std::int64_t den);
  static Scalar real(HighReal v, std::string symbol = {});
  static Scalar from_double(double v);

  /// Accepts "p/q", integers, decimals (parsed exactly), and
  /// "[c*]sqrt(r)[+-p/q]" (high-precision real carrying the text as symbol).
  static Scalar parse(std::string_view text);

  bool is_exact() const noexcept { return std::holds_alternative<Rational>(value_); }
  const Rational& rational() const;
  HighReal to_real() const;
  double to_double() const;
  const std::string& symbol() const noexcept { return symbol_; }

  /// "p/q" (or "p") for exact values, a 40-digit decimal otherwise.
  std::string to_string() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend std::partial_ordering operator<=>(const Scalar& a, const Scalar& b);

 private:
  std::variant<Rational, HighReal> value_;
  std::string symbol_;
};

/// Fractional part x - floor(x), exact for rationals.
Scalar fractional_part(const Scalar& x);

std::string rational_to_string(const Rational& q);
Rational parse_rational(std::string_view text);

/// Best rational approximation with denominator <= max_den (continued
/// fractions); returns false if no such approximation is within tol.
bool rationalize(double x, std::int64_t max_den, double tol, Rational& out);

}  // namespace segspec
