#pragma once

// Reference values computed without the library: plain truncated sums and a
// self-refining trapezoid rule. Slow but simple enough to trust.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>

namespace oracle {

using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

inline cplx e(double t) { return std::polar(1.0, 2.0 * pi * t); }

// sum_{|n| <= N} exp(-pi x n^2 + 2 i z n)
inline cplx theta3(cplx z, double x, int N = 80) {
  cplx s = 0.0;
  for (int n = -N; n <= N; ++n) s += std::exp(cplx(-pi * x * n * n, 0.0) + cplx(0.0, 2.0) * z * double(n));
  return s;
}

// sum_{-N-1 <= n <= N} exp(-pi x (n + 1/2)^2 + 2 i z (n + 1/2))
inline cplx theta2(cplx z, double x, int N = 80) {
  cplx s = 0.0;
  for (int n = -N - 1; n <= N; ++n) {
    const double h = n + 0.5;
    s += std::exp(cplx(-pi * x * h * h, 0.0) + cplx(0.0, 2.0) * z * h);
  }
  return s;
}

// exp(-pi alpha x^2) sum_{|p| <= P} exp(-pi alpha p^2 + pi alpha p) e((r p - gamma) x)
inline cplx gauss_theta(double alpha, double r, double gamma, double x, int P = 40) {
  cplx s = 0.0;
  for (int p = -P; p <= P; ++p) s += std::exp(-pi * alpha * p * p + pi * alpha * p) * e((r * p - gamma) * x);
  return std::exp(-pi * alpha * x * x) * s;
}

// int_{-R}^{R} f by trapezoid sums, halving the step until two agree to tol.
inline cplx integrate(const std::function<cplx(double)>& f, double R, double tol = 1e-13) {
  int n = 256;
  double h = 2.0 * R / n;
  cplx sum = 0.5 * (f(-R) + f(R));
  for (int k = 1; k < n; ++k) sum += f(-R + k * h);
  cplx prev = sum * h;
  for (int level = 0; level < 12; ++level) {
    for (int k = 1; k < 2 * n; k += 2) sum += f(-R + k * h / 2.0);
    n *= 2;
    h /= 2.0;
    const cplx cur = sum * h;
    if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  throw std::runtime_error("oracle quadrature did not settle");
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240611);
  return g;
}

inline double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng()); }
inline int uniform_int(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng()); }

}  // namespace oracle
