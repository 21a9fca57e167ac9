#include "core/rational.hpp"

#include <cstdlib>
#include <numeric>

#include "core/errors.hpp"

namespace expbasis {

namespace {

std::int64_t checked(__int128 value, const char* what) {
  if (value > INT64_MAX || value < INT64_MIN)
    fail(ErrorCode::internal, std::string("rational overflow in ") + what);
  return static_cast<std::int64_t>(value);
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  require(den != 0, ErrorCode::invalid_argument, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(std::abs(num), den);
  if (g == 0) g = 1;
  num_ = num / g;
  den_ = den / g;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  __int128 num = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
  __int128 den = static_cast<__int128>(a.den_) * b.den_;
  return Rational(checked(num, "add"), checked(den, "add"));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  __int128 num = static_cast<__int128>(a.num_) * b.num_;
  __int128 den = static_cast<__int128>(a.den_) * b.den_;
  return Rational(checked(num, "mul"), checked(den, "mul"));
}

Rational operator/(const Rational& a, const Rational& b) {
  require(b.num_ != 0, ErrorCode::invalid_argument, "rational division by zero");
  __int128 num = static_cast<__int128>(a.num_) * b.den_;
  __int128 den = static_cast<__int128>(a.den_) * b.num_;
  return Rational(checked(num, "div"), checked(den, "div"));
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
}

Rational Rational::mod(std::int64_t m) const {
  require(m > 0, ErrorCode::invalid_argument, "mod by non-positive modulus");
  // floor division of num/den by m
  std::int64_t q = num_ / (den_ * m);
  Rational r = *this - Rational(q * m);
  while (r < Rational(0)) r = r + Rational(m);
  while (!(r < Rational(m))) r = r - Rational(m);
  return r;
}

Rational Rational::parse(const std::string& text) {
  require(!text.empty(), ErrorCode::parse, "empty rational literal");
  std::size_t slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      std::int64_t v = std::stoll(text, &used);
      require(used == text.size(), ErrorCode::parse, "trailing characters in rational: " + text);
      return Rational(v);
    }
    std::int64_t p = std::stoll(text.substr(0, slash), &used);
    require(used == slash, ErrorCode::parse, "bad numerator in: " + text);
    std::string qs = text.substr(slash + 1);
    std::int64_t q = std::stoll(qs, &used);
    require(used == qs.size(), ErrorCode::parse, "bad denominator in: " + text);
    require(q != 0, ErrorCode::parse, "zero denominator in: " + text);
    return Rational(p, q);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(ErrorCode::parse, "malformed rational: " + text);
  }
}

}  // namespace expbasis
