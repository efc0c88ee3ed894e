#pragma once

#include <complex>
#include <map>
#include <utility>

#include "rotalg/schwartz.hpp"
#include "rotalg/theta.hpp"
#include "rotalg/torus.hpp"

// Algebra-valued inner products on the Schwartz space:
//
//   <f,g>_D(w1,w2)     = int f(x) conj(g(x + w1)) conj(e(x w2)) dx,   w = (m, n) sqrt(theta)
//   <f,g>_Dperp(z1,z2) = int conj(f(x)) g(x + z1) e(x z2) dx,         z = m delta1 + n delta2 = (n, m) beta
//
// computed by quadrature and, for the Gaussian-Theta functions, in closed form.
namespace rotalg {

enum class Lattice { d, dperp };

// Raw inner-product values at lattice points, before assembly into an element.
struct InnerProductCoeffs {
  Lattice lattice;
  ModuliParams params;
  std::map<std::pair<int, int>, cplx> coeffs;
  double tail_bound = 0.0;

  cplx at(int m, int n) const;
};

inline constexpr double kInnerTolerance = 1e-12;

cplx dperp_inner_quadrature(const SchwartzFn& f, const SchwartzFn& g, int m, int n, const ModuliParams& params,
                            double tol = kInnerTolerance);
cplx d_inner_quadrature(const SchwartzFn& f, const SchwartzFn& g, int m, int n, const ModuliParams& params,
                        double tol = kInnerTolerance);

// All values on the box |m| <= M, |n| <= N, sharing one quadrature grid.
InnerProductCoeffs dperp_inner_grid(const SchwartzFn& f, const SchwartzFn& g, int M, int N,
                                    const ModuliParams& params, double tol = 1e-13);
InnerProductCoeffs d_inner_grid(const SchwartzFn& f, const SchwartzFn& g, int M, int N, const ModuliParams& params,
                                double tol = 1e-13);

// Element of the matching algebra:
//   D:     coefficient of U1^m U2^n is theta e(-m n theta) <f,g>_D(w)
//   Dperp: coefficient of V1^m V2^n is <f,g>_Dperp(z) itself
TorusElement assemble(const InnerProductCoeffs& ip);

// int e(A x) exp(-pi alpha x^2) dx = exp(-pi A^2/alpha) / sqrt(alpha), A complex.
cplx gaussian_fourier_1d(cplx A, double alpha);
// iint e(A x + B y) exp(-pi alpha (x^2 + y^2)) e(-x y) dx dy
//   = exp(-pi (alpha A^2 + alpha B^2 - 2i A B) / (alpha^2 + 1)) / sqrt(alpha^2 + 1).
cplx gaussian_fourier_2d(cplx A, cplx B, double alpha);

// int conj(f1(x)) f2(x + s) e(t x) dx for two Gaussian-Theta functions.
cplx lemma41_closed_form(const GaussThetaFn& f1, const GaussThetaFn& f2, double s, double t);

// Gamma(u, v) = 4 e^{pi alpha/2} [theta2(pi/2 beta^2 v, 2i alpha) theta3(i pi beta^2 u/(2 alpha), i t_alpha)
//                                + theta3(pi/2 beta^2 v, 2i alpha) theta2(i pi beta^2 u/(2 alpha), i t_alpha)]
theta::Scaled gamma_scaled(double u, double v, const ModuliParams& params);
cplx gamma_fn(double u, double v, const ModuliParams& params);

// <h,h>_Dperp(m delta1 + n delta2) from the theta closed form.
cplx hh_coefficient(const ModuliParams& params, int m, int n);

// <h,h>_Dperp on the support where coefficients exceed 1e-18 of the central
// one; tail_bound sums the computed magnitudes of a wide ring beyond it.
InnerProductCoeffs hh_coefficients(const ModuliParams& params);
TorusElement hh_element(const ModuliParams& params);

// psi_n(t): the V2^n coefficient function of sqrt(2 alpha) <h,h>_Dperp, period 1 in t.
double psi_eval(int n, double t, const ModuliParams& params);
// The same function summed from its defining Fourier series in e(m t).
double psi_series(int n, double t, const ModuliParams& params);
// Bound on sup_t |d psi_n / dt| from the Fourier series, 2 pi sum_m |m| |c_m|.
double psi_derivative_bound(int n, const ModuliParams& params);

struct FnGnReport {
  double t_shifted = 0.0;
  cplx f_series, f_closed, g_series, g_closed;
  double max_rel_error = 0.0;  // relative to the larger of the value and the series l1 mass
};

// Compares the defining sums of F_n, G_n at t' = t + beta^2 n / 2 with the
// theta products theta3(pi t', 2i alpha) theta3(pi t', i tau_alpha) and
// theta2(pi t', 2i alpha) theta2(pi t', i tau_alpha).
FnGnReport fn_gn_identity_check(int n, double t, const ModuliParams& params);

struct OrthogonalityReport {
  double residual_same_sign = 0.0;   // gamma' = gamma, M0 = -1, N0 = 0
  double residual_opposite = 0.0;    // gamma' = -gamma, M0' = 0, N0' = 0
  double four_gamma_over_beta = 0.0;
  double e1_zero_max = 0.0;          // largest reduced |theta3| at the E1 arguments
  bool pass = false;
};

// Checks the lattice-zero conditions that make <g, g^>_Dperp and
// <g, (g~)^>_Dperp vanish for r = beta/2, gamma = beta/4.
OrthogonalityReport orthogonality_conditions(const ModuliParams& params);

// Argument of theta3(., i d) in the E1 factor, d = alpha + alpha r^2/(alpha^2 + 1).
cplx e1_argument(const ModuliParams& params, double r, double gamma, double gamma_prime, int m, int n);

}  // namespace rotalg
