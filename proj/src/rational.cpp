#include "rotalg/rational.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace rotalg {

namespace {

using i128 = __int128;

Rational make_checked(i128 num, i128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 a = num < 0 ? -num : num;
  i128 b = den;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  constexpr i128 limit = static_cast<i128>(INT64_MAX);
  if (num > limit || num < -limit || den > limit) throw std::overflow_error("rational overflow");
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num_ = num;
  den_ = den;
}

Rational operator+(const Rational& a, const Rational& b) {
  return make_checked(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                      static_cast<i128>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return make_checked(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) { return a * b.reciprocal(); }

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<i128>(a.num_) * b.den_ < static_cast<i128>(b.num_) * a.den_;
}

Rational Rational::reciprocal() const {
  if (num_ == 0) throw std::domain_error("reciprocal of zero");
  return Rational(den_, num_);
}

Rational Rational::frac() const {
  std::int64_t r = num_ % den_;
  if (r < 0) r += den_;
  return Rational(r, den_);
}

std::string Rational::str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

Rational Rational::parse(std::string_view text) {
  auto parse_int = [](std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
      throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
    return v;
  };
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view digits = text.substr(dot + 1);
    if (digits.empty() || digits.size() > 15) throw std::invalid_argument("bad decimal: '" + std::string(text) + "'");
    bool negative = !whole.empty() && whole.front() == '-';
    if (negative || (!whole.empty() && whole.front() == '+')) whole.remove_prefix(1);
    std::int64_t w = whole.empty() ? 0 : parse_int(whole);
    std::int64_t f = parse_int(digits);
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < digits.size(); ++i) scale *= 10;
    Rational r = Rational(w) + Rational(f, scale);
    return negative ? -r : r;
  }
  return Rational(parse_int(text));
}

std::complex<double> unit(double turns) {
  double t = turns - std::round(turns);
  return std::polar(1.0, 2.0 * std::numbers::pi * t);
}

std::complex<double> unit(const Rational& r, std::int64_t k) {
  i128 n = static_cast<i128>(r.num()) * k;
  i128 q = r.den();
  i128 rem = n % q;
  if (rem < 0) rem += q;
  // Exact values on the real and imaginary axes keep commutation checks bit-exact.
  if (rem == 0) return {1.0, 0.0};
  if (2 * rem == q) return {-1.0, 0.0};
  if (4 * rem == q) return {0.0, 1.0};
  if (4 * rem == 3 * q) return {0.0, -1.0};
  // Split off the nearest quarter turn in integers; the rest is within 1/8 turn.
  const i128 four = 4 * rem;
  const i128 quarter = (four + q / 2) / q;
  const i128 left = four - quarter * q;
  const std::complex<double> base =
      std::polar(1.0, 0.5 * std::numbers::pi * static_cast<double>(left) / static_cast<double>(q));
  switch (static_cast<int>(quarter % 4)) {
    case 0: return base;
    case 1: return {-base.imag(), base.real()};
    case 2: return -base;
    default: return {base.imag(), -base.real()};
  }
}

}  // namespace rotalg
