#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

namespace rotalg {

// Exact rational p/q, always in lowest terms with q > 0.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  Rational operator-() const { return {-num_, den_}; }
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(const Rational& a, const Rational& b);

  Rational reciprocal() const;
  // Fractional part in [0, 1).
  Rational frac() const;

  std::string str() const;
  // Accepts "p/q", "p" or a finite decimal such as "0.24".
  static Rational parse(std::string_view text);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// e(t) = exp(2 pi i t).
std::complex<double> unit(double turns);
// e(k * r) evaluated with the angle reduced exactly modulo 1.
std::complex<double> unit(const Rational& r, std::int64_t k = 1);

}  // namespace rotalg
