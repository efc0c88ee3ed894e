#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "rotalg/rational.hpp"
#include "rotalg/torus.hpp"

namespace rotalg {

// The linked parameters of the construction:
//   beta = 1/sqrt(theta),  beta^2 = 4 (alpha^2 + 1),  |G/D| = theta.
// alpha > 0 forces 0 < theta < 1/4 (beta > 2).
class ModuliParams {
 public:
  static ModuliParams from_theta(double theta);
  static ModuliParams from_rational(Rational theta);
  static ModuliParams from_alpha(double alpha);

  double theta() const noexcept { return theta_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double beta_sq() const noexcept { return beta_sq_; }
  double covolume() const noexcept { return theta_; }
  // Spacing of the D lattice, sqrt(theta).
  double d_spacing() const noexcept { return 1.0 / beta_; }
  double t_alpha() const noexcept { return 4.0 * alpha_ + 2.0 / alpha_; }
  double tau_alpha() const noexcept { return 2.0 * (alpha_ + 1.0 / alpha_); }
  const std::optional<Rational>& exact_theta() const noexcept { return exact_; }

  cplx lambda_phase() const;
  // U1 U2 = e(theta) U2 U1 on the D side, V1 V2 = e(1/theta) V2 V1 on the other.
  Commutation d_commutation() const;
  Commutation dperp_commutation() const;

 private:
  ModuliParams(double theta, std::optional<Rational> exact);
  double theta_, alpha_, beta_, beta_sq_;
  std::optional<Rational> exact_;
};

// f(x) = exp(-pi alpha x^2) sum_p a_p e((r p - gamma) x), p in [p_min, p_min + size).
struct GaussThetaFn {
  double alpha = 1.0;
  double r = 0.0;
  double gamma = 0.0;
  int p_min = 0;
  std::vector<cplx> coeffs;
  // l1 mass of the coefficient sequence beyond the stored window.
  double dropped_mass = 0.0;

  // Coefficients a_p = exp(-pi alpha p^2 + pi alpha p), truncated where they
  // fall below 1e-18 of the peak value.
  static GaussThetaFn gaussian_theta(double alpha, double r, double gamma);
  static GaussThetaFn pure_gaussian(double alpha);

  int p_max() const noexcept { return p_min + static_cast<int>(coeffs.size()) - 1; }
  cplx a(int p) const;
  double coefficient_l1() const;

  cplx eval(double x) const;
  // Closed-form transform (1/sqrt(alpha)) sum_p a_p exp(-pi (s - r p + gamma)^2 / alpha).
  cplx eval_hat(double s) const;
};

// Rapidly decreasing function on the line, kept as an immutable expression
// tree over Gaussian-Theta leaves so it can be evaluated anywhere.
class SchwartzFn {
 public:
  // sum_k c_k e(x s_k) f(x + a_k), grouped by the shift a.
  struct Translate {
    double shift;
    std::vector<std::pair<double, cplx>> modulations;  // (s, c)
  };

  SchwartzFn(GaussThetaFn leaf);

  static SchwartzFn hat_of(GaussThetaFn leaf);
  static SchwartzFn superpose(SchwartzFn child, std::vector<Translate> terms);

  cplx operator()(double x) const { return eval(x); }
  cplx eval(double x) const;

  // Upper bound on sup |f|.
  double sup_bound() const;
  // R such that |f(x)| <= eps whenever |x| > R.
  double decay_radius(double eps) const;

  friend SchwartzFn operator+(const SchwartzFn& a, const SchwartzFn& b);
  friend SchwartzFn operator*(cplx c, const SchwartzFn& f);
  SchwartzFn reflect() const;

 private:
  struct Node;
  struct Leaf { GaussThetaFn g; };
  struct LeafHat { GaussThetaFn g; };
  struct Reflect { std::shared_ptr<const Node> child; };
  struct Scale { cplx c; std::shared_ptr<const Node> child; };
  struct Sum { std::vector<std::shared_ptr<const Node>> children; };
  struct Superpose { std::shared_ptr<const Node> child; std::vector<Translate> terms; };
  struct Node {
    std::variant<Leaf, LeafHat, Reflect, Scale, Sum, Superpose> v;
  };

  explicit SchwartzFn(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static cplx eval_node(const Node& n, double x);
  static double sup_node(const Node& n);
  static double decay_node(const Node& n, double eps);
  static std::shared_ptr<const Node> fourier_node(const std::shared_ptr<const Node>& n);

  friend SchwartzFn fourier_transform(const SchwartzFn& f);

  std::shared_ptr<const Node> node_;
};

// f^(s) = int f(x) e(-s x) dx. Pushed through the tree symbolically, so the
// double transform is exactly the reflection.
SchwartzFn fourier_transform(const SchwartzFn& f);

// (pi_(a,s) f)(x) = e(x s) f(x + a).
SchwartzFn heisenberg_act(double a, double s, const SchwartzFn& f);

// f b = sum_{y in D-perp} b(y) pi_y^*(f), with b given on monomials
// V1^m V2^n = delta_y with y = (n beta, m beta), acting as h(y,y) pi_-y.
SchwartzFn right_action(const SchwartzFn& f, const TorusElement& b, const ModuliParams& params);

// a f = sum_{m,n} a_{mn} U1^m U2^n f, U1^m U2^n = e(m n theta) pi_(m sqrt(theta), n sqrt(theta)).
// Coefficients are those of the monomials, so |G/D| is already absorbed.
SchwartzFn left_action(const TorusElement& a, const SchwartzFn& f, const ModuliParams& params);

struct HFunction {
  GaussThetaFn g;          // g_{beta/2, gamma}
  GaussThetaFn g_reflect;  // g_{-beta/2, -gamma}
  SchwartzFn h;            // g + g~
};

// The even function h = g_{beta/2, beta/4} + g_{-beta/2, -beta/4}.
HFunction build_h(const ModuliParams& params);
// Same shape with an arbitrary gamma (gamma = 0 gives the singular variant).
HFunction build_h_with_gamma(const ModuliParams& params, double gamma);

}  // namespace rotalg
