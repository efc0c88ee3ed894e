#pragma once

#include <complex>

// Jacobi theta functions on the imaginary axis of the modulus, t = i x:
//
//   theta3(z, ix) = sum_n exp(-pi x n^2) exp(2 i z n)
//   theta2(z, ix) = sum_n exp(-pi x (n + 1/2)^2) exp(2 i z (n + 1/2))
//
// Every evaluation sums a number of terms chosen from a proven tail majorant,
// after shifting z by whole quasi-periods so that |Im z| <= pi x / 2.
namespace rotalg::theta {

inline constexpr double kDefaultTolerance = 1e-15;

enum class Kind { two = 2, three = 3 };

// theta = exp(log_scale) * mantissa. Keeps arguments with large imaginary part
// representable; the mantissa is the reduced series, of order one.
struct Scaled {
  std::complex<double> log_scale;
  std::complex<double> mantissa;

  std::complex<double> value() const { return std::exp(log_scale) * mantissa; }
};

// Upper bound on the tail dropped when theta3 is summed over |n| <= N and
// theta2 over -N-1 <= n <= N, valid for any argument with |Im z| <= imz.
// Returns +infinity when N is too small for the geometric majorant.
double truncation_bound(double x, double imz, int N);

// Smallest N >= 1 with truncation_bound(x, imz, N) <= tol.
int terms_for(double x, double imz, double tol);

Scaled scaled(Kind kind, std::complex<double> z, double x, double tol = kDefaultTolerance);

std::complex<double> value(Kind kind, std::complex<double> z, double x, double tol = kDefaultTolerance);

inline std::complex<double> theta2(std::complex<double> z, double x, double tol = kDefaultTolerance) {
  return value(Kind::two, z, x, tol);
}
inline std::complex<double> theta3(std::complex<double> z, double x, double tol = kDefaultTolerance) {
  return value(Kind::three, z, x, tol);
}

// Real-argument conveniences; the imaginary residue is dropped.
double theta2_real(double z, double x);
double theta3_real(double z, double x);

}  // namespace rotalg::theta
