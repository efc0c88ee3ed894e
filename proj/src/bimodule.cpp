#include "rotalg/bimodule.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/FFT>

#include "rotalg/errors.hpp"
#include "rotalg/quadrature.hpp"

namespace rotalg {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I{0.0, 1.0};

using Fn = std::function<cplx(double)>;

// table[i][j] = int A(x) B(x + i * shift_step) e(x (j - K) step) dx over [-R, R], i in [i0, i1].
//
// Nested trapezoid sums; the integrands are smooth and negligible at +-R, so
// they converge geometrically in the node density. The spacing divides the
// shift step, so B lives on one extended grid and each halving reuses all
// earlier samples. When turn = step * shift_step is rational the phase
// e(x_k f step) is periodic in k, and the frequency sums become one FFT per
// shift over the folded products.
std::vector<std::vector<cplx>> shifted_moments(const Fn& A, const Fn& B, double shift_step, int i0, int i1, int K,
                                               double step, double R, double tol,
                                               std::optional<Rational> turn = std::nullopt) {
  const std::size_t S = static_cast<std::size_t>(i1 - i0 + 1);
  const std::size_t F = static_cast<std::size_t>(2 * K + 1);
  using Table = std::vector<std::vector<cplx>>;
  if (!(R > 0.0)) return Table(S, std::vector<cplx>(F));
  if (!(shift_step > 0.0)) throw std::invalid_argument("shift step must be positive");
  if (K == 0) turn.reset();

  double h = 1.0 / (8.0 + 2.0 * std::abs(step) * K);
  long L = static_cast<long>(std::ceil(shift_step / h));
  h = shift_step / static_cast<double>(L);
  long count = static_cast<long>(std::ceil(2.0 * R / h));
  const double left = -0.5 * static_cast<double>(count) * h;
  const long off = std::min<long>(i0, 0);
  const long span = std::max<long>(i1, 0) - off;

  // avals[k] = A(left + k h), k in [0, count]; bvals[j] = B(left + (j + off L) h).
  std::vector<cplx> avals(static_cast<std::size_t>(count + 1)), bvals(static_cast<std::size_t>(count + span * L + 1));
  for (long k = 0; k <= count; ++k) avals[static_cast<std::size_t>(k)] = A(left + static_cast<double>(k) * h);
  for (std::size_t j = 0; j < bvals.size(); ++j)
    bvals[j] = B(left + static_cast<double>(static_cast<long>(j) + off * L) * h);

  Eigen::FFT<double> fft;
  double mass = 0.0;
  auto evaluate = [&] {
    Table t(S, std::vector<cplx>(F));
    // e(left (f - K) step); left * step = -count * turn / (2 L) exactly.
    std::vector<cplx> lead_pow(F);
    for (std::size_t f = 0; f < F; ++f) {
      const long j = static_cast<long>(f) - K;
      lead_pow[f] = turn ? unit(Rational(-count * turn->num(), 2 * L * turn->den()), j) : unit(left * step * j);
    }
    const long period = turn ? static_cast<long>(turn->den()) * L : 0;
    std::vector<cplx> fold, spectrum;
    for (std::size_t i = 0; i < S; ++i) {
      const long shift = (i0 + static_cast<long>(i) - off) * L;
      auto& row = t[i];
      if (turn) {
        fold.assign(static_cast<std::size_t>(period), cplx{});
        for (long k = 0; k <= count; ++k) {
          const cplx v = avals[static_cast<std::size_t>(k)] * bvals[static_cast<std::size_t>(k + shift)];
          mass = std::max(mass, std::abs(v));
          fold[static_cast<std::size_t>(k % period)] += v;
        }
        // forward FFT at index -g gives sum_r fold[r] e(r g / period).
        fft.fwd(spectrum, fold);
        for (std::size_t f = 0; f < F; ++f) {
          const long g = ((static_cast<long>(f) - K) * turn->num()) % period;
          const long idx = ((-g) % period + period) % period;
          row[f] = h * lead_pow[f] * spectrum[static_cast<std::size_t>(idx)];
        }
      } else {
        for (long k = 0; k <= count; ++k) {
          const cplx v = avals[static_cast<std::size_t>(k)] * bvals[static_cast<std::size_t>(k + shift)];
          if (v == cplx{}) continue;
          mass = std::max(mass, std::abs(v));
          const double x = left + static_cast<double>(k) * h;
          const cplx base = unit(x * step);
          cplx w = unit(-x * step * K);
          for (std::size_t f = 0; f < F; ++f) {
            row[f] += h * v * w;
            w *= base;
          }
        }
      }
    }
    return t;
  };
  auto distance = [](const Table& x, const Table& y) {
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < x[i].size(); ++j) d = std::max(d, std::abs(x[i][j] - y[i][j]));
    return d;
  };
  // Rounding floor for a sum of count terms of size at most mass * h.
  auto floor = [&] {
    return 64.0 * std::numeric_limits<double>::epsilon() * mass * h * std::sqrt(static_cast<double>(count));
  };
  // Halve the spacing: old samples become the even ones.
  auto refine = [&](std::vector<cplx>& vals, long shift_index, const Fn& fn) {
    std::vector<cplx> next(2 * vals.size() - 1);
    for (std::size_t j = 0; j < next.size(); ++j)
      next[j] = (j % 2 == 0) ? vals[j / 2] : fn(left + static_cast<double>(static_cast<long>(j) + shift_index) * h);
    vals = std::move(next);
  };

  Table prev = evaluate(), last;
  double diff = 0.0;
  for (int level = 0; level < 10; ++level) {
    count *= 2;
    h /= 2.0;
    L *= 2;
    refine(avals, 0, A);
    refine(bvals, off * L, B);
    last = evaluate();
    diff = distance(prev, last);
    if (diff <= std::max(tol, floor())) return last;
    if (level < 9) std::swap(prev, last);
  }
  // Report the two latest estimates at the entry that moved the most.
  std::size_t wi = 0, wj = 0;
  for (std::size_t i = 0; i < S; ++i)
    for (std::size_t j = 0; j < F; ++j)
      if (std::abs(last[i][j] - prev[i][j]) > std::abs(last[wi][wj] - prev[wi][wj])) {
        wi = i;
        wj = j;
      }
  char msg[160];
  std::snprintf(msg, sizeof msg, "inner-product quadrature did not converge: change %.3g above floor %.3g", diff,
                floor());
  throw QuadratureError(msg, std::abs(prev[wi][wj]), std::abs(last[wi][wj]));
}

// |A(x)| small enough outside [-R, R] that the integrand is negligible.
double common_radius(const SchwartzFn& f, const SchwartzFn& g, double tol) {
  const double eps = tol * 1e-4 / std::max(1.0, g.sup_bound());
  return f.decay_radius(eps);
}

}  // namespace

cplx InnerProductCoeffs::at(int m, int n) const {
  auto it = coeffs.find({m, n});
  return it == coeffs.end() ? cplx{} : it->second;
}

cplx dperp_inner_quadrature(const SchwartzFn& f, const SchwartzFn& g, int m, int n, const ModuliParams& params,
                            double tol) {
  const double beta = params.beta();
  Fn A = [&f](double x) { return std::conj(f(x)); };
  Fn B = [&g](double x) { return g(x); };
  const double R = common_radius(f, g, tol);
  Fn Am = [&A, z2 = m * beta](double x) { return A(x) * unit(x * z2); };
  return shifted_moments(Am, B, beta, n, n, 0, 0.0, R, tol)[0][0];
}

cplx d_inner_quadrature(const SchwartzFn& f, const SchwartzFn& g, int m, int n, const ModuliParams& params,
                        double tol) {
  const double s = params.d_spacing();
  Fn A = [&f, w2 = n * s](double x) { return f(x) * unit(-x * w2); };
  Fn B = [&g](double x) { return std::conj(g(x)); };
  const double R = common_radius(f, g, tol);
  return shifted_moments(A, B, s, m, m, 0, 0.0, R, tol)[0][0];
}

InnerProductCoeffs dperp_inner_grid(const SchwartzFn& f, const SchwartzFn& g, int M, int N,
                                    const ModuliParams& params, double tol) {
  const double beta = params.beta();
  Fn A = [&f](double x) { return std::conj(f(x)); };
  Fn B = [&g](double x) { return g(x); };
  std::optional<Rational> turn;
  if (params.exact_theta()) turn = params.exact_theta()->reciprocal();
  const auto t = shifted_moments(A, B, beta, -N, N, M, beta, common_radius(f, g, tol), tol, turn);
  InnerProductCoeffs out{Lattice::dperp, params, {}, 0.0};
  for (int n = -N; n <= N; ++n)
    for (int m = -M; m <= M; ++m)
      out.coeffs[{m, n}] = t[static_cast<std::size_t>(n + N)][static_cast<std::size_t>(m + M)];
  return out;
}

InnerProductCoeffs d_inner_grid(const SchwartzFn& f, const SchwartzFn& g, int M, int N, const ModuliParams& params,
                                double tol) {
  const double s = params.d_spacing();
  Fn A = [&f](double x) { return f(x); };
  Fn B = [&g](double x) { return std::conj(g(x)); };
  std::optional<Rational> turn;
  if (params.exact_theta()) turn = -*params.exact_theta();
  const auto t = shifted_moments(A, B, s, -M, M, N, -s, common_radius(f, g, tol), tol, turn);
  InnerProductCoeffs out{Lattice::d, params, {}, 0.0};
  for (int m = -M; m <= M; ++m)
    for (int n = -N; n <= N; ++n)
      out.coeffs[{m, n}] = t[static_cast<std::size_t>(m + M)][static_cast<std::size_t>(n + N)];
  return out;
}

TorusElement assemble(const InnerProductCoeffs& ip) {
  const ModuliParams& p = ip.params;
  if (ip.lattice == Lattice::d) {
    const Commutation c = p.d_commutation();
    TorusElement e(c);
    for (const auto& [key, v] : ip.coeffs) {
      const auto [m, n] = key;
      e.set(m, n, p.theta() * c.phase(-static_cast<std::int64_t>(m) * n) * v);
    }
    e.add_dropped_mass(p.theta() * ip.tail_bound);
    return e;
  }
  const Commutation c = p.dperp_commutation();
  TorusElement e(c);
  for (const auto& [key, v] : ip.coeffs) {
    const auto [m, n] = key;
    e.set(m, n, v);
  }
  e.add_dropped_mass(ip.tail_bound);
  return e;
}

cplx gaussian_fourier_1d(cplx A, double alpha) {
  if (!(alpha > 0.0)) throw std::domain_error("Gaussian integral needs alpha > 0");
  return std::exp(-pi * A * A / alpha) / std::sqrt(alpha);
}

cplx gaussian_fourier_2d(cplx A, cplx B, double alpha) {
  if (!(alpha > 0.0)) throw std::domain_error("Gaussian integral needs alpha > 0");
  const double d = alpha * alpha + 1.0;
  return std::exp(-pi * (alpha * A * A + alpha * B * B - cplx{0.0, 2.0} * A * B) / d) / std::sqrt(d);
}

cplx lemma41_closed_form(const GaussThetaFn& f1, const GaussThetaFn& f2, double s, double t) {
  const double a1 = f1.alpha, a2 = f2.alpha, al = a1 + a2;
  const double g1 = f1.gamma, g2 = f2.gamma;
  const double dg = g1 - g2;
  // Prefactor e(-a2 s t/al) e(-(a2 g1 + a1 g2) s/al) / sqrt(al) * exp(-pi a1 a2 s^2/al); the remaining
  // Gaussians in t and gamma are folded into each term's exponent, which then reads
  // -pi (r2 q - r1 p + t + g1 - g2)^2 / al and never overflows.
  const cplx phase = unit(-a2 * s * t / al - (a2 * g1 + a1 * g2) * s / al);
  const double envelope = std::exp(-pi * a1 * a2 * s * s / al) / std::sqrt(al);
  cplx sum{};
  for (int p = f1.p_min; p <= f1.p_max(); ++p) {
    const cplx ap = std::conj(f1.a(p));
    if (ap == cplx{}) continue;
    for (int q = f2.p_min; q <= f2.p_max(); ++q) {
      const cplx bq = f2.a(q);
      if (bq == cplx{}) continue;
      const double delta = f2.r * q - f1.r * p;
      const double u = delta + t + dg;
      sum += ap * bq * unit((a1 * f2.r * q + a2 * f1.r * p) * s / al) * std::exp(-pi * u * u / al);
    }
  }
  return phase * envelope * sum;
}

theta::Scaled gamma_scaled(double u, double v, const ModuliParams& params) {
  const double a = params.alpha();
  const double b2 = params.beta_sq();
  const double re = pi / 2.0 * b2 * v;
  const cplx im{0.0, pi / (2.0 * a) * b2 * u};
  const double t = params.t_alpha();
  const auto s2 = theta::scaled(theta::Kind::two, im, t);
  const auto s3 = theta::scaled(theta::Kind::three, im, t);
  // Both reductions shift by the same quasi-period, so the scales agree.
  const cplx lead2 = theta::theta2({re, 0.0}, 2.0 * a);
  const cplx lead3 = theta::theta3({re, 0.0}, 2.0 * a);
  const cplx mant = lead2 * s3.mantissa + lead3 * s2.mantissa * std::exp(s2.log_scale - s3.log_scale);
  return {s3.log_scale + std::log(4.0) + pi * a / 2.0, mant};
}

cplx gamma_fn(double u, double v, const ModuliParams& params) { return gamma_scaled(u, v, params).value(); }

namespace {

// e(-beta^2 m n / 2), exact when theta is rational.
cplx half_phase(const ModuliParams& params, std::int64_t mn) {
  if (const auto& q = params.exact_theta()) return unit(Rational(-q->den(), 2 * q->num()), mn);
  return unit(-params.beta_sq() * static_cast<double>(mn) / 2.0);
}

double log_envelope(const ModuliParams& params, int m, int n) {
  const double a = params.alpha(), b2 = params.beta_sq();
  return -pi * a * b2 * n * n / 2.0 - pi * b2 * m * m / (2.0 * a);
}

}  // namespace

cplx hh_coefficient(const ModuliParams& params, int m, int n) {
  const auto g = gamma_scaled(m, n, params);
  const cplx scale = std::exp(g.log_scale + log_envelope(params, m, n));
  return half_phase(params, static_cast<std::int64_t>(m) * n) * scale * g.mantissa /
         std::sqrt(2.0 * params.alpha());
}

InnerProductCoeffs hh_coefficients(const ModuliParams& params) {
  const double c00 = std::abs(hh_coefficient(params, 0, 0));
  const double cut = 1e-18 * c00;
  int M = 0, N = 0;
  while (std::abs(hh_coefficient(params, M + 1, 0)) > cut || std::abs(hh_coefficient(params, M + 1, 1)) > cut) ++M;
  while (std::abs(hh_coefficient(params, 0, N + 1)) > cut || std::abs(hh_coefficient(params, 1, N + 1)) > cut) ++N;
  ++M;
  ++N;
  InnerProductCoeffs out{Lattice::dperp, params, {}, 0.0};
  const int wide_m = 2 * M + 4, wide_n = 2 * N + 4;
  for (int m = -wide_m; m <= wide_m; ++m)
    for (int n = -wide_n; n <= wide_n; ++n) {
      const cplx c = hh_coefficient(params, m, n);
      if (std::abs(m) <= M && std::abs(n) <= N)
        out.coeffs[{m, n}] = c;
      else
        out.tail_bound += std::abs(c);
    }
  // Beyond the wide ring the Gaussian prefactors make the remainder smaller
  // than the last ring by many orders; count it once more as a margin.
  out.tail_bound *= 2.0;
  return out;
}

TorusElement hh_element(const ModuliParams& params) { return assemble(hh_coefficients(params)); }

double psi_eval(int n, double t, const ModuliParams& params) {
  const double a = params.alpha();
  const double vn = pi / 2.0 * params.beta_sq() * n;
  const double tp = pi * (t + params.beta_sq() * n / 2.0);
  const double tau = params.tau_alpha();
  const cplx v = 4.0 * std::exp(pi * a / 2.0) *
                 (theta::theta2(vn, 2.0 * a) * theta::theta3(tp, 2.0 * a) * theta::theta3(tp, tau) +
                  theta::theta3(vn, 2.0 * a) * theta::theta2(tp, 2.0 * a) * theta::theta2(tp, tau));
  if (std::abs(v.imag()) > 1e-10 * std::max(1.0, std::abs(v.real())))
    throw NumericError("psi_n has an imaginary residue of " + std::to_string(v.imag()));
  return v.real();
}

namespace {

// c_m = e^{-pi beta^2 m^2/(2 alpha)} Gamma(m, n) e(beta^2 m n / 2), summed while above 1e-20 of the peak.
template <typename F>
void psi_fourier(int n, const ModuliParams& params, F&& visit) {
  const double a = params.alpha(), b2 = params.beta_sq();
  auto coefficient = [&](int m) {
    const auto g = gamma_scaled(m, n, params);
    return std::conj(half_phase(params, static_cast<std::int64_t>(m) * n)) *
           std::exp(g.log_scale - pi * b2 * m * m / (2.0 * a)) * g.mantissa;
  };
  const double peak = std::abs(coefficient(0)) + std::abs(coefficient(1)) + std::abs(coefficient(-1));
  visit(0, coefficient(0));
  for (int m = 1;; ++m) {
    const cplx cp = coefficient(m), cm = coefficient(-m);
    visit(m, cp);
    visit(-m, cm);
    if (std::abs(cp) + std::abs(cm) < 1e-20 * peak && m > 2) break;
  }
}

}  // namespace

double psi_series(int n, double t, const ModuliParams& params) {
  cplx s{};
  psi_fourier(n, params, [&](int m, cplx c) { s += c * unit(m * t); });
  return s.real();
}

double psi_derivative_bound(int n, const ModuliParams& params) {
  double s = 0.0;
  psi_fourier(n, params, [&](int m, cplx c) { s += std::abs(m) * std::abs(c); });
  return 2.0 * pi * s * 1.0000001;
}

FnGnReport fn_gn_identity_check(int n, double t, const ModuliParams& params) {
  const double a = params.alpha(), b2 = params.beta_sq(), ta = params.t_alpha(), tau = params.tau_alpha();
  FnGnReport r;
  r.t_shifted = t + b2 * n / 2.0;
  const double tp = r.t_shifted;
  // Defining sums over m of e^{-pi beta^2 m^2/(2 alpha)} theta_k(i pi beta^2 m/(2 alpha), i t_alpha) e(m t').
  auto term = [&](theta::Kind k, int m) {
    const auto s = theta::scaled(k, cplx{0.0, pi * b2 * m / (2.0 * a)}, ta);
    return std::exp(s.log_scale - pi * b2 * m * m / (2.0 * a)) * s.mantissa * unit(m * tp);
  };
  r.f_series = term(theta::Kind::three, 0);
  r.g_series = term(theta::Kind::two, 0);
  // Absolute sums set the scale; the products vanish at theta zeros.
  double f_mass = std::abs(r.f_series), g_mass = std::abs(r.g_series);
  for (int m = 1;; ++m) {
    const cplx f1 = term(theta::Kind::three, m), f2 = term(theta::Kind::three, -m);
    const cplx g1 = term(theta::Kind::two, m), g2 = term(theta::Kind::two, -m);
    r.f_series += f1 + f2;
    r.g_series += g1 + g2;
    const double inc = std::abs(f1) + std::abs(f2) + std::abs(g1) + std::abs(g2);
    f_mass += std::abs(f1) + std::abs(f2);
    g_mass += std::abs(g1) + std::abs(g2);
    if (inc < 1e-20 && m > 2) break;
  }
  r.f_closed = theta::theta3(pi * tp, 2.0 * a) * theta::theta3(pi * tp, tau);
  r.g_closed = theta::theta2(pi * tp, 2.0 * a) * theta::theta2(pi * tp, tau);
  auto rel = [](cplx x, cplx y, double mass) {
    return std::abs(x - y) / std::max({1e-300, std::abs(y), mass});
  };
  r.max_rel_error = std::max(rel(r.f_series, r.f_closed, f_mass), rel(r.g_series, r.g_closed, g_mass));
  return r;
}

cplx e1_argument(const ModuliParams& params, double r, double gamma, double gamma_prime, int m, int n) {
  const double a = params.alpha(), b = params.beta();
  const cplx bracket = a * b * m + I * (b * n) + a * gamma + I * gamma_prime;
  return 0.5 * I * pi * a + I * pi * r / (a * a + 1.0) * bracket;
}

OrthogonalityReport orthogonality_conditions(const ModuliParams& params) {
  const double a = params.alpha(), b = params.beta();
  const double r = b / 2.0, gamma = b / 4.0;
  OrthogonalityReport rep;
  const cplx k = b * gamma / (2.0 * (a * a + 1.0));
  const cplx lhs_same = 0.5 * I * a + k * (I * a - 1.0);
  const cplx rhs_same = 0.5 + (-1.0) + (0.5 + 0.0) * 2.0 * I * a;
  const cplx lhs_opp = 0.5 * I * a + k * (I * a + 1.0);
  const cplx rhs_opp = 0.5 + 0.0 + (0.5 + 0.0) * 2.0 * I * a;
  rep.residual_same_sign = std::abs(lhs_same - rhs_same);
  rep.residual_opposite = std::abs(lhs_opp - rhs_opp);
  rep.four_gamma_over_beta = 4.0 * gamma / b;
  const double d = a + a * r * r / (a * a + 1.0);
  for (double gp : {gamma, -gamma})
    for (int m = -2; m <= 2; ++m)
      for (int n = -2; n <= 2; ++n) {
        const auto s = theta::scaled(theta::Kind::three, e1_argument(params, r, gamma, gp, m, n), d);
        rep.e1_zero_max = std::max(rep.e1_zero_max, std::abs(s.mantissa));
      }
  rep.pass = rep.residual_same_sign <= 1e-14 && rep.residual_opposite <= 1e-14 &&
             std::abs(rep.four_gamma_over_beta - 1.0) <= 1e-14 && rep.e1_zero_max <= 1e-12;
  return rep;
}

}  // namespace rotalg
