#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "rotalg/schwartz.hpp"
#include "rotalg/theta.hpp"

using namespace rotalg;
using oracle::cplx;

namespace {

constexpr double pi = std::numbers::pi;

double sup_diff(const SchwartzFn& a, const SchwartzFn& b, double lo = -3.0, double hi = 3.0, int n = 121) {
  double d = 0.0;
  for (int k = 0; k < n; ++k) {
    const double x = lo + (hi - lo) * k / (n - 1);
    d = std::max(d, std::abs(a(x) - b(x)));
  }
  return d;
}

TorusElement random_element(Commutation c, int radius) {
  TorusElement e(c);
  for (int m = -radius; m <= radius; ++m)
    for (int n = -radius; n <= radius; ++n) e.set(m, n, {oracle::uniform(-1, 1), oracle::uniform(-1, 1)});
  return e;
}

class SchwartzTest : public ::testing::Test {
 protected:
  ModuliParams p5 = ModuliParams::from_rational(Rational(1, 5));
  ModuliParams p29 = ModuliParams::from_rational(Rational(2, 9));
  GaussThetaFn g = GaussThetaFn::gaussian_theta(0.7, 0.4, 0.1);
  SchwartzFn f{g};
};

TEST_F(SchwartzTest, parameters_at_one_fifth) {
  EXPECT_NEAR(p5.theta(), 0.2, 1e-16);
  EXPECT_NEAR(p5.alpha(), 0.5, 1e-15);
  EXPECT_NEAR(p5.beta(), std::sqrt(5.0), 1e-15);
  EXPECT_NEAR(p5.beta_sq(), 4.0 * (p5.alpha() * p5.alpha() + 1.0), 1e-14);
  const HFunction h = build_h(p5);
  EXPECT_NEAR(h.g.r, std::sqrt(5.0) / 2.0, 1e-15);
  EXPECT_NEAR(h.g.gamma, std::sqrt(5.0) / 4.0, 1e-15);
  EXPECT_NEAR(h.g_reflect.r, -std::sqrt(5.0) / 2.0, 1e-15);
  EXPECT_NEAR(h.g_reflect.gamma, -std::sqrt(5.0) / 4.0, 1e-15);
  EXPECT_LE(h.g.dropped_mass, 1e-16);
}

TEST_F(SchwartzTest, quarter_is_rejected) {
  EXPECT_THROW(ModuliParams::from_rational(Rational(1, 4)), std::domain_error);
  EXPECT_THROW(ModuliParams::from_theta(0.3), std::domain_error);
  EXPECT_THROW(ModuliParams::from_theta(0.0), std::domain_error);
  try {
    ModuliParams::from_theta(0.25);
    FAIL();
  } catch (const std::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("beta"), std::string::npos);
  }
}

TEST_F(SchwartzTest, heisenberg_identity) { EXPECT_EQ(sup_diff(heisenberg_act(0.0, 0.0, f), f), 0.0); }

TEST_F(SchwartzTest, heisenberg_pointwise) {
  for (int k = 0; k < 20; ++k) {
    const double a = oracle::uniform(-2, 2), s = oracle::uniform(-2, 2), x = oracle::uniform(-3, 3);
    const cplx want = oracle::e(x * s) * oracle::gauss_theta(0.7, 0.4, 0.1, x + a);
    EXPECT_LE(std::abs(heisenberg_act(a, s, f)(x) - want), 1e-13);
  }
}

TEST_F(SchwartzTest, heisenberg_composition) {
  for (int k = 0; k < 10; ++k) {
    const double a = oracle::uniform(-1, 1), s = oracle::uniform(-1, 1);
    const double b = oracle::uniform(-1, 1), t = oracle::uniform(-1, 1);
    const SchwartzFn lhs = heisenberg_act(a, s, heisenberg_act(b, t, f));
    const SchwartzFn rhs = oracle::e(a * t) * heisenberg_act(a + b, s + t, f);
    EXPECT_LE(sup_diff(lhs, rhs), 1e-13);
  }
}

TEST_F(SchwartzTest, heisenberg_adjoint_rule) {
  const SchwartzFn q(GaussThetaFn::gaussian_theta(1.1, -0.3, 0.2));
  for (int k = 0; k < 4; ++k) {
    const double a = oracle::uniform(-1, 1), s = oracle::uniform(-1, 1);
    const SchwartzFn pf = heisenberg_act(a, s, f);
    const SchwartzFn adj_q = oracle::e(a * s) * heisenberg_act(-a, -s, q);
    const cplx lhs = oracle::integrate([&](double x) { return pf(x) * std::conj(q(x)); }, 8.0);
    const cplx rhs = oracle::integrate([&](double x) { return f(x) * std::conj(adj_q(x)); }, 8.0);
    EXPECT_LE(std::abs(lhs - rhs), 1e-12);
  }
}

TEST_F(SchwartzTest, heisenberg_commutation_on_lattice) {
  const double w = p5.d_spacing();
  for (int k = 0; k < 10; ++k) {
    const double a = w * oracle::uniform_int(-3, 3), s = w * oracle::uniform_int(-3, 3);
    const double b = w * oracle::uniform_int(-3, 3), t = w * oracle::uniform_int(-3, 3);
    const SchwartzFn xy = heisenberg_act(a, s, heisenberg_act(b, t, f));
    const SchwartzFn yx = heisenberg_act(b, t, heisenberg_act(a, s, f));
    const cplx c = oracle::e(a * t) * std::conj(oracle::e(b * s));
    EXPECT_LE(sup_diff(xy, c * yx), 1e-12);
  }
}

TEST_F(SchwartzTest, leaf_at_origin) {
  for (double alpha : {0.3, 0.5, 1.0, 2.5}) {
    const GaussThetaFn q = GaussThetaFn::gaussian_theta(alpha, 0.9, 0.2);
    const cplx want = std::exp(pi * alpha / 4.0) * oracle::theta2(0.0, alpha);
    EXPECT_LE(std::abs(q.eval(0.0) - want), 1e-13 * std::abs(want));
    EXPECT_LE(std::abs(q.eval(0.0) - oracle::gauss_theta(alpha, 0.9, 0.2, 0.0)), 1e-13 * std::abs(want));
  }
}

TEST_F(SchwartzTest, leaf_matches_direct_sum) {
  const HFunction h = build_h(p5);
  for (int k = 0; k < 50; ++k) {
    const double x = oracle::uniform(-4, 4);
    EXPECT_LE(std::abs(h.g.eval(x) - oracle::gauss_theta(0.5, h.g.r, h.g.gamma, x)), 1e-14);
    EXPECT_LE(std::abs(g.eval(x) - oracle::gauss_theta(0.7, 0.4, 0.1, x)), 1e-14);
  }
}

TEST_F(SchwartzTest, reflection_flips_parameters) {
  const SchwartzFn flipped(GaussThetaFn::gaussian_theta(0.7, -0.4, -0.1));
  EXPECT_LE(sup_diff(f.reflect(), flipped), 1e-15);
  for (int k = 0; k < 20; ++k) {
    const double x = oracle::uniform(-3, 3);
    EXPECT_LE(std::abs(f.reflect()(x) - f(-x)), 1e-16);
  }
}

TEST_F(SchwartzTest, h_is_even) {
  for (const auto& p : {p5, p29, ModuliParams::from_rational(Rational(3, 13))}) {
    const HFunction h = build_h(p);
    for (int k = 0; k < 100; ++k) {
      const double x = oracle::uniform(-5, 5);
      EXPECT_LE(std::abs(h.h(x) - h.h(-x)), 1e-14);
    }
  }
}

TEST_F(SchwartzTest, pure_gaussian_transform) {
  for (double alpha : {0.4, 1.0, 2.0}) {
    const SchwartzFn q = fourier_transform(SchwartzFn(GaussThetaFn::pure_gaussian(alpha)));
    for (double s = -3.0; s <= 3.0; s += 0.25) {
      const double want = std::exp(-pi * s * s / alpha) / std::sqrt(alpha);
      EXPECT_LE(std::abs(q(s) - want), 1e-15 * std::max(1.0, want));
    }
  }
}

TEST_F(SchwartzTest, transform_matches_quadrature) {
  const HFunction h = build_h(p5);
  for (const GaussThetaFn& leaf : {g, h.g, h.g_reflect}) {
    const SchwartzFn hat = fourier_transform(SchwartzFn(leaf));
    for (double s = -3.0; s <= 3.0; s += 0.5) {
      const cplx want = oracle::integrate([&](double x) { return leaf.eval(x) * oracle::e(-s * x); }, 8.0, 1e-15);
      // Below ~1e-6 the oracle itself only resolves absolute error.
      if (std::abs(want) >= 1e-6)
        EXPECT_LE(std::abs(hat(s) - want), 1e-10 * std::abs(want)) << "s=" << s;
      else
        EXPECT_LE(std::abs(hat(s) - want), 1e-15) << "s=" << s;
    }
  }
}

TEST_F(SchwartzTest, transform_of_translate) {
  const SchwartzFn moved = heisenberg_act(0.3, -0.6, f);
  const SchwartzFn hat = fourier_transform(moved);
  for (double s = -2.0; s <= 2.0; s += 0.5) {
    const cplx want = oracle::integrate([&](double x) { return moved(x) * oracle::e(-s * x); }, 9.0, 1e-15);
    EXPECT_LE(std::abs(hat(s) - want), 1e-12);
  }
}

TEST_F(SchwartzTest, double_transform_is_reflection) {
  const HFunction h = build_h(p5);
  EXPECT_LE(sup_diff(fourier_transform(fourier_transform(f)), f.reflect()), 1e-12);
  const SchwartzFn tree = heisenberg_act(0.5, 0.2, h.h) + cplx(0.0, 2.0) * f;
  EXPECT_LE(sup_diff(fourier_transform(fourier_transform(tree)), tree.reflect()), 1e-12);
}

TEST_F(SchwartzTest, parseval) {
  const HFunction h = build_h(p5);
  for (const SchwartzFn& q : {f, h.h, heisenberg_act(0.4, 0.3, h.h)}) {
    const SchwartzFn hat = fourier_transform(q);
    const double a = oracle::integrate([&](double x) { return cplx(std::norm(q(x))); }, 9.0).real();
    const double b = oracle::integrate([&](double x) { return cplx(std::norm(hat(x))); }, 9.0).real();
    EXPECT_LE(std::abs(a - b), 1e-8 * a);
  }
}

TEST_F(SchwartzTest, h_decay_envelope) {
  const HFunction h = build_h(p5);
  const double C = h.g.coefficient_l1() + h.g_reflect.coefficient_l1();
  for (double x = -10.0; x <= 10.0; x += 0.01)
    EXPECT_LE(std::abs(h.h(x)), C * std::exp(-pi * p5.alpha() * x * x / 2.0) * (1 + 1e-14));
  EXPECT_GE(h.h.sup_bound(), std::abs(h.h(0.0)));
  const double R = h.h.decay_radius(1e-12);
  for (double x : {R, R + 0.5, -R, -R - 1.0}) EXPECT_LE(std::abs(h.h(x)), 1e-12);
}

TEST_F(SchwartzTest, right_action_identity) {
  const SchwartzFn r = right_action(f, TorusElement::identity(p5.dperp_commutation()), p5);
  EXPECT_EQ(sup_diff(r, f), 0.0);
}

TEST_F(SchwartzTest, right_action_generators) {
  const Commutation c = p5.dperp_commutation();
  const double b = p5.beta();
  EXPECT_LE(sup_diff(right_action(f, TorusElement::monomial(c, 1, 0), p5), heisenberg_act(0.0, -b, f)), 1e-15);
  EXPECT_LE(sup_diff(right_action(f, TorusElement::monomial(c, 0, 1), p5), heisenberg_act(-b, 0.0, f)), 1e-15);
  // A general lattice point y = (n beta, m beta) acts as h(y,y) pi_-y.
  for (auto [m, n] : {std::pair{2, 1}, {-1, 3}, {-2, -2}}) {
    const double ya = n * b, ys = m * b;
    const SchwartzFn want = oracle::e(ya * ys) * heisenberg_act(-ya, -ys, f);
    EXPECT_LE(sup_diff(right_action(f, TorusElement::monomial(c, m, n), p5), want), 1e-12);
  }
}

TEST_F(SchwartzTest, right_action_is_module) {
  for (const auto& p : {p29, p5}) {
    const Commutation c = p.dperp_commutation();
    for (int k = 0; k < 3; ++k) {
      const TorusElement b = random_element(c, 1), b2 = random_element(c, 1);
      const SchwartzFn lhs = right_action(right_action(f, b, p), b2, p);
      const SchwartzFn rhs = right_action(f, multiply(b, b2), p);
      EXPECT_LE(sup_diff(lhs, rhs), 1e-12);
    }
  }
}

TEST_F(SchwartzTest, right_operators_commutation) {
  // As operators on functions, R(V1) R(V2) = e(-1/theta) R(V2) R(V1).
  const Commutation c = p29.dperp_commutation();
  const TorusElement v1 = TorusElement::monomial(c, 1, 0), v2 = TorusElement::monomial(c, 0, 1);
  const SchwartzFn a = right_action(right_action(f, v2, p29), v1, p29);
  const SchwartzFn b = right_action(right_action(f, v1, p29), v2, p29);
  EXPECT_LE(sup_diff(a, oracle::e(-1.0 / p29.theta()) * b), 1e-13);
}

TEST_F(SchwartzTest, left_action_identity) {
  const SchwartzFn r = left_action(TorusElement::identity(p5.d_commutation()), f, p5);
  EXPECT_EQ(sup_diff(r, f), 0.0);
}

TEST_F(SchwartzTest, left_action_generators) {
  const Commutation c = p5.d_commutation();
  const double w = p5.d_spacing();
  EXPECT_LE(sup_diff(left_action(TorusElement::monomial(c, 1, 0), f, p5), heisenberg_act(w, 0.0, f)), 1e-15);
  EXPECT_LE(sup_diff(left_action(TorusElement::monomial(c, 0, 1), f, p5), heisenberg_act(0.0, w, f)), 1e-15);
  const SchwartzFn u21 = left_action(TorusElement::monomial(c, 2, -1), f, p5);
  EXPECT_LE(sup_diff(u21, oracle::e(-2.0 * p5.theta()) * heisenberg_act(2 * w, -w, f)), 1e-13);
}

TEST_F(SchwartzTest, left_generators_commutation) {
  const Commutation c = p29.d_commutation();
  const TorusElement u1 = TorusElement::monomial(c, 1, 0), u2 = TorusElement::monomial(c, 0, 1);
  const SchwartzFn a = left_action(u1, left_action(u2, f, p29), p29);
  const SchwartzFn b = left_action(u2, left_action(u1, f, p29), p29);
  EXPECT_LE(sup_diff(a, oracle::e(p29.theta()) * b), 1e-13);
}

TEST_F(SchwartzTest, left_action_is_module) {
  const Commutation c = p29.d_commutation();
  for (int k = 0; k < 3; ++k) {
    const TorusElement a = random_element(c, 1), a2 = random_element(c, 1);
    const SchwartzFn lhs = left_action(a, left_action(a2, f, p29), p29);
    EXPECT_LE(sup_diff(lhs, left_action(multiply(a, a2), f, p29)), 1e-12);
  }
}

TEST_F(SchwartzTest, actions_reject_wrong_algebra) {
  EXPECT_THROW(right_action(f, TorusElement::identity(p5.d_commutation()), p5), std::domain_error);
  EXPECT_THROW(left_action(TorusElement::identity(p5.dperp_commutation()), f, p5), std::domain_error);
}

}  // namespace
