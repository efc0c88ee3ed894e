#include "rotalg/theta.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rotalg::theta {

namespace {

constexpr double pi = std::numbers::pi;

void check_modulus(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw std::domain_error("theta: modulus must be i*x with x > 0, got x = " + std::to_string(x));
}

}  // namespace

double truncation_bound(double x, double imz, int N) {
  check_modulus(x);
  if (N < 1) throw std::domain_error("theta: truncation needs N >= 1");
  const double y = std::abs(imz);
  // Dropped terms are majorized by 2 * sum_{j>=0} exp(f(k0 + j)) with
  // f(k) = -pi x k^2 + 2 k y, which is decreasing past y / (pi x).
  const double k0 = N + 1.0;
  if (k0 <= y / (pi * x)) return std::numeric_limits<double>::infinity();
  const double log_ratio = -pi * x * (2.0 * k0 + 1.0) + 2.0 * y;
  if (log_ratio >= 0.0) return std::numeric_limits<double>::infinity();
  const double lead = -pi * x * k0 * k0 + 2.0 * k0 * y;
  return 2.0 * std::exp(lead) / -std::expm1(log_ratio);
}

int terms_for(double x, double imz, double tol) {
  check_modulus(x);
  if (!(tol > 0.0)) throw std::domain_error("theta: tolerance must be positive");
  // Start near the crossover of the Gaussian and the exponential growth.
  int N = std::max(1, static_cast<int>(std::abs(imz) / (pi * x)));
  while (truncation_bound(x, imz, N) > tol) {
    ++N;
    if (N > 10'000'000) throw std::domain_error("theta: modulus too small for summation");
  }
  return N;
}

Scaled scaled(Kind kind, std::complex<double> z, double x, double tol) {
  check_modulus(x);
  using cd = std::complex<double>;
  const cd i{0.0, 1.0};

  // Quasi-period shift: theta(z0 + pi i x k) = exp(-2 k i z0 + pi x k^2) theta(z0).
  const double k = std::round(z.imag() / (pi * x));
  cd z0 = z - i * (pi * x * k);
  cd log_scale = -2.0 * k * i * z0 + pi * x * k * k;

  // Real period: theta3 has period pi, theta2 changes sign.
  const double j = std::round(z0.real() / pi);
  z0 -= pi * j;
  double sign = 1.0;
  if (kind == Kind::two && std::fmod(std::abs(j), 2.0) == 1.0) sign = -1.0;

  const int N = terms_for(x, z0.imag(), tol);
  cd sum{0.0, 0.0};
  if (kind == Kind::three) {
    for (int n = N; n >= 1; --n) {
      const double dn = n;
      sum += std::exp(-pi * x * dn * dn + 2.0 * i * z0 * dn) + std::exp(-pi * x * dn * dn - 2.0 * i * z0 * dn);
    }
    sum += 1.0;
  } else {
    for (int n = N; n >= 0; --n) {
      const double h = n + 0.5;
      sum += std::exp(-pi * x * h * h + 2.0 * i * z0 * h) + std::exp(-pi * x * h * h - 2.0 * i * z0 * h);
    }
  }
  return {log_scale, sign * sum};
}

std::complex<double> value(Kind kind, std::complex<double> z, double x, double tol) {
  return scaled(kind, z, x, tol).value();
}

double theta2_real(double z, double x) { return value(Kind::two, {z, 0.0}, x).real(); }
double theta3_real(double z, double x) { return value(Kind::three, {z, 0.0}, x).real(); }

}  // namespace rotalg::theta
