#include "segspec/scalar.hpp"

#include <cmath>
#include <regex>

#include "segspec/error.hpp"

namespace segspec {
namespace {

HighReal rational_to_real(const Rational& q) {
  return HighReal(boost::multiprecision::numerator(q)) /
         HighReal(boost::multiprecision::denominator(q));
}

std::string strip_spaces(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (c != ' ' && c != '\t' && c != '\n') out.push_back(c);
  }
  return out;
}

[[noreturn]] void parse_failure(std::string_view text) {
  throw Error("measure-core", ErrorCode::ParseError,
              "cannot parse scalar '" + std::string(text) + "'");
}

// Decimal literal with optional exponent, converted exactly.
// The BigInt string constructor reads a leading zero as an octal prefix.
std::string strip_leading_zeros(std::string digits) {
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  return digits;
}

bool parse_decimal(const std::string& s, Rational& out) {
  static const std::regex re(R"(^([+-]?)(\d*)\.?(\d*)(?:[eE]([+-]?\d+))?$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) return false;
  const std::string ip = m[2].str();
  const std::string fp = m[3].str();
  if (ip.empty() && fp.empty()) return false;
  BigInt mant(strip_leading_zeros(ip + fp));
  long long exp10 = -static_cast<long long>(fp.size());
  if (m[4].matched) exp10 += std::stoll(m[4].str());
  Rational q(mant);
  const BigInt ten_pow = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::llabs(exp10)));
  if (exp10 >= 0) {
    q *= Rational(ten_pow);
  } else {
    q /= Rational(ten_pow);
  }
  if (m[1].str() == "-") q = -q;
  out = q;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string s = strip_spaces(text);
  static const std::regex re(R"(^([+-]?\d+)(?:/(\d+))?$)");
  std::smatch m;
  if (std::regex_match(s, m, re)) {
    std::string n = m[1].str();
    const bool negative = n.front() == '-';
    if (n.front() == '+' || negative) n.erase(0, 1);
    BigInt num(strip_leading_zeros(n));
    if (negative) num = -num;
    BigInt den(m[2].matched ? strip_leading_zeros(m[2].str()) : std::string("1"));
    if (den == 0) parse_failure(text);
    return Rational(num, den);
  }
  Rational q;
  if (parse_decimal(s, q)) return q;
  parse_failure(text);
}

std::string rational_to_string(const Rational& q) {
  const BigInt& den = boost::multiprecision::denominator(q);
  if (den == 1) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" + den.str();
}

Scalar Scalar::ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) {
    throw Error("measure-core", ErrorCode::InvalidArgument, "zero denominator");
  }
  return Scalar(Rational(num, den));
}

Scalar Scalar::real(HighReal v, std::string symbol) {
  Scalar s;
  s.value_ = std::move(v);
  s.symbol_ = std::move(symbol);
  return s;
}

Scalar Scalar::from_double(double v) {
  if (!std::isfinite(v)) {
    throw Error("measure-core", ErrorCode::InvalidArgument, "non-finite scalar");
  }
  return real(HighReal(v));
}

Scalar Scalar::parse(std::string_view text) {
  const std::string s = strip_spaces(text);
  if (s.empty()) parse_failure(text);
  if (s.find("sqrt") == std::string::npos) return Scalar(parse_rational(s));

  static const std::regex re(
      R"(^([+-])?(?:(\d+(?:/\d+)?)\*)?sqrt\((\d+(?:/\d+)?)\)(?:([+-])(\d+(?:/\d+)?))?$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) parse_failure(text);
  const Rational radicand = parse_rational(m[3].str());
  HighReal v = boost::multiprecision::sqrt(rational_to_real(radicand));
  if (m[2].matched) v *= rational_to_real(parse_rational(m[2].str()));
  if (m[1].str() == "-") v = -v;
  if (m[5].matched) {
    const HighReal off = rational_to_real(parse_rational(m[5].str()));
    v = m[4].str() == "-" ? v - off : v + off;
  }
  // Perfect squares collapse to exact values.
  const Rational root_guess = Rational(BigInt(boost::multiprecision::sqrt(boost::multiprecision::numerator(radicand))),
                                       BigInt(boost::multiprecision::sqrt(boost::multiprecision::denominator(radicand))));
  if (root_guess * root_guess == radicand) {
    Rational exact = root_guess;
    if (m[2].matched) exact *= parse_rational(m[2].str());
    if (m[1].str() == "-") exact = -exact;
    if (m[5].matched) {
      const Rational off = parse_rational(m[5].str());
      exact = m[4].str() == "-" ? Rational(exact - off) : Rational(exact + off);
    }
    return Scalar(exact);
  }
  return real(v, s);
}

const Rational& Scalar::rational() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return *q;
  throw Error("measure-core", ErrorCode::InvalidArgument, "scalar is not an exact rational");
}

HighReal Scalar::to_real() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return rational_to_real(*q);
  return std::get<HighReal>(value_);
}

double Scalar::to_double() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return q->convert_to<double>();
  return std::get<HighReal>(value_).convert_to<double>();
}

std::string Scalar::to_string() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return rational_to_string(*q);
  const HighReal& v = std::get<HighReal>(value_);
  if (v == 0) return "0";  // never "-0"
  return v.str(40, std::ios_base::fmtflags(0));
}

Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(-rational());
  return real(-std::get<HighReal>(value_));
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return Scalar(a.rational() + b.rational());
  return Scalar::real(a.to_real() + b.to_real());
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return Scalar(a.rational() - b.rational());
  return Scalar::real(a.to_real() - b.to_real());
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return Scalar(a.rational() * b.rational());
  return Scalar::real(a.to_real() * b.to_real());
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_exact() && b.rational() == 0) {
    throw Error("measure-core", ErrorCode::InvalidArgument, "division by zero");
  }
  if (a.is_exact() && b.is_exact()) return Scalar(a.rational() / b.rational());
  return Scalar::real(a.to_real() / b.to_real());
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.rational() == b.rational();
  return a.to_real() == b.to_real();
}

std::partial_ordering operator<=>(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) {
    if (a.rational() < b.rational()) return std::partial_ordering::less;
    if (a.rational() > b.rational()) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
  }
  const HighReal x = a.to_real();
  const HighReal y = b.to_real();
  if (x < y) return std::partial_ordering::less;
  if (x > y) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

Scalar fractional_part(const Scalar& x) {
  if (x.is_exact()) {
    const Rational& q = x.rational();
    const BigInt& num = boost::multiprecision::numerator(q);
    const BigInt& den = boost::multiprecision::denominator(q);
    BigInt fl = num / den;
    if (num < 0 && fl * den != num) fl -= 1;
    return Scalar(q - Rational(fl));
  }
  const HighReal v = x.to_real();
  return Scalar::real(v - boost::multiprecision::floor(v));
}

bool rationalize(double x, std::int64_t max_den, double tol, Rational& out) {
  if (!std::isfinite(x)) return false;
  // Convergents h/k of the continued fraction of x.
  long double rem = x;
  long long h_prev = 1, h = static_cast<long long>(std::floor(rem));
  long long k_prev = 0, k = 1;
  rem -= std::floor(rem);
  bool found = false;
  for (int iter = 0; iter < 64; ++iter) {
    if (k <= max_den && std::fabs(x - static_cast<double>(h) / static_cast<double>(k)) <= tol) {
      out = Rational(h, k);
      found = true;
      break;
    }
    if (rem < 1e-18L) break;
    rem = 1.0L / rem;
    const long long a = static_cast<long long>(std::floor(rem));
    rem -= a;
    const long long h_next = a * h + h_prev;
    const long long k_next = a * k + k_prev;
    if (k_next > max_den) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  if (!found && k <= max_den && std::fabs(x - static_cast<double>(h) / static_cast<double>(k)) <= tol) {
    out = Rational(h, k);
    found = true;
  }
  return found;
}

}  // namespace segspec
