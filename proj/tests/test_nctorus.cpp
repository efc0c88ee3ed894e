#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "oracle.hpp"
#include "rotalg/bimodule.hpp"
#include "rotalg/errors.hpp"
#include "rotalg/functional.hpp"
#include "rotalg/matrix_bundle.hpp"
#include "rotalg/torus.hpp"

using namespace rotalg;
using oracle::cplx;

namespace {

TorusElement random_element(Commutation c, int terms, int radius) {
  TorusElement e(c);
  for (int k = 0; k < terms; ++k)
    e.add(oracle::uniform_int(-radius, radius), oracle::uniform_int(-radius, radius),
          {oracle::uniform(-1, 1), oracle::uniform(-1, 1)});
  return e;
}

double max_coeff(const TorusElement& a) {
  double m = 0.0;
  a.for_each([&](int, int, const cplx& v) { m = std::max(m, std::abs(v)); });
  return m;
}

// sum c z1^m z2^n D^m S^n with D = diag(w^k), S e_k = e_{k+1}, built from scratch.
Eigen::MatrixXcd rep_oracle(const TorusElement& a, cplx z1, cplx z2) {
  const Rational r = a.commutation().rational()->frac();
  const int q = static_cast<int>(r.den());
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(q, q), S = Eigen::MatrixXcd::Zero(q, q);
  for (int k = 0; k < q; ++k) {
    D(k, k) = oracle::e(static_cast<double>(r.num()) * k / q);
    S((k + 1) % q, k) = 1.0;
  }
  auto power = [&](const Eigen::MatrixXcd& M, int p) {
    Eigen::MatrixXcd base = p >= 0 ? M : Eigen::MatrixXcd(M.adjoint());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(q, q);
    for (int i = 0; i < std::abs(p); ++i) out = out * base;
    return out;
  };
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(q, q);
  a.for_each([&](int m, int n, const cplx& c) {
    out += c * std::pow(z1, m) * std::pow(z2, n) * power(D, m) * power(S, n);
  });
  return out;
}

Eigen::MatrixXcd inv_sqrt_oracle(const Eigen::MatrixXcd& M) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (M + M.adjoint()));
  Eigen::VectorXd d = es.eigenvalues().array().rsqrt();
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

class TorusTest : public ::testing::Test {
 protected:
  ModuliParams p5 = ModuliParams::from_rational(Rational(1, 5));
  std::vector<Commutation> comms{Commutation::exact(Rational(1, 5)), Commutation::exact(Rational(2, 9)),
                                 Commutation::exact(Rational(3, 13)), Commutation::exact(Rational(9, 2)),
                                 Commutation::real(0.2318)};
};

TEST_F(TorusTest, identity_is_neutral) {
  for (const auto& c : comms) {
    const TorusElement a = random_element(c, 5, 3);
    EXPECT_EQ(max_abs_diff(multiply(TorusElement::identity(c), a), a), 0.0);
    EXPECT_EQ(max_abs_diff(multiply(a, TorusElement::identity(c)), a), 0.0);
  }
}

TEST_F(TorusTest, generator_relation) {
  for (const auto& c : comms) {
    const TorusElement g1 = TorusElement::monomial(c, 1, 0), g2 = TorusElement::monomial(c, 0, 1);
    const TorusElement lhs = multiply(g1, g2), rhs = c.phase(1) * multiply(g2, g1);
    EXPECT_LE(max_abs_diff(lhs, rhs), 1e-15);
    EXPECT_EQ(multiply(g1, g2).coeff(1, 1), cplx(1.0));
  }
}

TEST_F(TorusTest, product_rule_on_monomials) {
  const Commutation c = comms[1];
  for (int k = 0; k < 50; ++k) {
    const int a = oracle::uniform_int(-4, 4), b = oracle::uniform_int(-4, 4);
    const int cc = oracle::uniform_int(-4, 4), d = oracle::uniform_int(-4, 4);
    const TorusElement prod = multiply(TorusElement::monomial(c, a, b), TorusElement::monomial(c, cc, d));
    EXPECT_LE(std::abs(prod.coeff(a + cc, b + d) - oracle::e(-b * cc * c.value())), 1e-13);
    EXPECT_EQ(prod.nonzeros(), 1u);
  }
}

TEST_F(TorusTest, associativity) {
  for (const auto& c : comms) {
    for (int k = 0; k < 10; ++k) {
      const TorusElement a = random_element(c, 5, 3), b = random_element(c, 5, 3), d = random_element(c, 5, 3);
      EXPECT_LE(max_abs_diff(multiply(multiply(a, b), d), multiply(a, multiply(b, d))), 1e-13);
    }
  }
}

TEST_F(TorusTest, mismatched_parameters) {
  EXPECT_THROW(multiply(TorusElement::identity(comms[0]), TorusElement::identity(comms[1])), std::domain_error);
}

TEST_F(TorusTest, adjoint_rules) {
  for (const auto& c : comms) {
    EXPECT_EQ(max_abs_diff(adjoint(TorusElement::identity(c)), TorusElement::identity(c)), 0.0);
    const TorusElement a = random_element(c, 6, 3), b = random_element(c, 6, 3);
    EXPECT_LE(max_abs_diff(adjoint(adjoint(a)), a), 1e-15);
    EXPECT_LE(max_abs_diff(adjoint(multiply(a, b)), multiply(adjoint(b), adjoint(a))), 1e-13);
    for (int k = 0; k < 20; ++k) {
      const TorusElement u = TorusElement::monomial(c, oracle::uniform_int(-5, 5), oracle::uniform_int(-5, 5));
      EXPECT_LE(max_abs_diff(multiply(adjoint(u), u), TorusElement::identity(c)), 1e-15);
      EXPECT_LE(max_abs_diff(multiply(u, adjoint(u)), TorusElement::identity(c)), 1e-15);
    }
  }
}

TEST_F(TorusTest, trace_rules) {
  for (const auto& c : comms) {
    EXPECT_EQ(trace(TorusElement::identity(c)), cplx(1.0));
    EXPECT_EQ(trace(TorusElement::monomial(c, 2, -1)), cplx(0.0));
    const TorusElement a = random_element(c, 6, 3), b = random_element(c, 6, 3);
    const cplx t = trace(multiply(a, adjoint(a)));
    EXPECT_GE(t.real(), 0.0);
    EXPECT_LE(std::abs(t.imag()), 1e-15);
    EXPECT_LE(std::abs(trace(multiply(a, b)) - trace(multiply(b, a))), 1e-12);
  }
}

TEST_F(TorusTest, norms) {
  const Commutation c = comms[0];
  EXPECT_EQ(l1_norm(TorusElement::identity(c)), 1.0);
  EXPECT_DOUBLE_EQ(l1_norm(TorusElement::monomial(c, 3, 1, {0.6, -0.8})), 1.0);
  const NormBounds id = op_norm_bounds(TorusElement::identity(c));
  EXPECT_NEAR(id.lower, 1.0, 1e-14);
  EXPECT_NEAR(id.upper, 1.0, 1e-14);
  const NormBounds u = op_norm_bounds(TorusElement::monomial(c, -2, 3));
  EXPECT_NEAR(u.lower, 1.0, 1e-14);
  EXPECT_NEAR(u.upper, 1.0, 1e-14);
  const TorusElement a = random_element(c, 6, 3);
  const NormBounds pos = op_norm_bounds(multiply(adjoint(a), a));
  EXPECT_LE(pos.lower, pos.upper);
  const TorusElement P = hh_element(p5);
  EXPECT_GE(l1_norm(P), bundle_sup_norm(matrix_rep(P)));
}

TEST_F(TorusTest, sigma_on_generators) {
  const Commutation c = comms[0];
  EXPECT_EQ(max_abs_diff(fourier_sigma(TorusElement::monomial(c, 1, 0)), TorusElement::monomial(c, 0, 1)), 0.0);
  EXPECT_EQ(max_abs_diff(fourier_sigma(TorusElement::monomial(c, 0, 1)), TorusElement::monomial(c, -1, 0)), 0.0);
}

TEST_F(TorusTest, sigma_order_four_and_trace) {
  for (const auto& c : comms) {
    for (int k = 0; k < 100; ++k) {
      const TorusElement a = random_element(c, 6, 4);
      const TorusElement s4 = fourier_sigma(fourier_sigma(fourier_sigma(fourier_sigma(a))));
      EXPECT_LE(max_abs_diff(s4, a), 1e-15);
      EXPECT_EQ(trace(fourier_sigma(a)), trace(a));
    }
  }
}

TEST_F(TorusTest, sigma_is_homomorphism) {
  for (const auto& c : comms) {
    for (int k = 0; k < 30; ++k) {
      const TorusElement x = TorusElement::monomial(c, oracle::uniform_int(-4, 4), oracle::uniform_int(-4, 4));
      const TorusElement y = TorusElement::monomial(c, oracle::uniform_int(-4, 4), oracle::uniform_int(-4, 4));
      EXPECT_LE(max_abs_diff(fourier_sigma(multiply(x, y)), multiply(fourier_sigma(x), fourier_sigma(y))), 1e-14);
    }
    const TorusElement a = random_element(c, 5, 3), b = random_element(c, 5, 3);
    EXPECT_LE(max_abs_diff(fourier_sigma(multiply(a, b)), multiply(fourier_sigma(a), fourier_sigma(b))), 1e-13);
    EXPECT_LE(max_abs_diff(fourier_sigma(adjoint(a)), adjoint(fourier_sigma(a))), 1e-15);
  }
}

TEST_F(TorusTest, matrix_identity_and_commutation) {
  for (int i = 0; i < 3; ++i) {
    const Commutation c = comms[i];
    const MatrixBundle id = matrix_rep(TorusElement::identity(c), 8);
    const int q = static_cast<int>(*c.dimension());
    for (const auto& M : id.values) EXPECT_EQ((M - Eigen::MatrixXcd::Identity(q, q)).norm(), 0.0);
    for (int k = 0; k < 10; ++k) {
      const cplx z1 = oracle::e(oracle::uniform(0, 1)), z2 = oracle::e(oracle::uniform(0, 1));
      const Eigen::MatrixXcd g1 = matrix_at(TorusElement::monomial(c, 1, 0), z1, z2);
      const Eigen::MatrixXcd g2 = matrix_at(TorusElement::monomial(c, 0, 1), z1, z2);
      EXPECT_LE((g1 * g2 - c.phase(1) * g2 * g1).norm(), 1e-14);
    }
  }
}

TEST_F(TorusTest, matrix_matches_oracle) {
  for (int i = 0; i < 4; ++i) {
    const Commutation c = comms[i];
    const TorusElement a = random_element(c, 8, 5);
    for (int k = 0; k < 5; ++k) {
      const cplx z1 = oracle::e(oracle::uniform(0, 1)), z2 = oracle::e(oracle::uniform(0, 1));
      EXPECT_LE((matrix_at(a, z1, z2) - rep_oracle(a, z1, z2)).norm(), 1e-12);
    }
  }
}

TEST_F(TorusTest, representation_is_homomorphism) {
  for (int i = 0; i < 4; ++i) {
    const Commutation c = comms[i];
    const TorusElement a = random_element(c, 6, 3), b = random_element(c, 6, 3);
    const MatrixBundle A = matrix_rep(a, 8), B = matrix_rep(b, 8), AB = matrix_rep(multiply(a, b), 8);
    for (std::size_t k = 0; k < A.values.size(); ++k)
      EXPECT_LE((A.values[k] * B.values[k] - AB.values[k]).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST_F(TorusTest, trace_from_matrices) {
  for (int i = 0; i < 3; ++i) {
    const Commutation c = comms[i];
    const TorusElement a = random_element(c, 10, 6);
    const MatrixBundle b = matrix_rep(a, 8);
    cplx avg{};
    for (const auto& M : b.values) avg += M.trace() / static_cast<double>(b.q);
    avg /= static_cast<double>(b.values.size());
    EXPECT_LE(std::abs(avg - trace(a)), 1e-12);
  }
}

TEST_F(TorusTest, self_adjoint_gives_hermitian) {
  const TorusElement a = random_element(comms[1], 6, 3);
  const TorusElement h = a + adjoint(a);
  for (const auto& M : matrix_rep(h).values) EXPECT_LE((M - M.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST_F(TorusTest, irrational_has_no_matrices) {
  EXPECT_THROW(matrix_rep(TorusElement::identity(comms[4])), UnsupportedDomain);
  EXPECT_NO_THROW(op_norm_bounds(TorusElement::identity(comms[4])));
}

TEST_F(TorusTest, inv_sqrt_trivial) {
  const Commutation c = comms[0];
  const TorusElement id = TorusElement::identity(c);
  EXPECT_LE(l1_distance(inv_sqrt(id, 1.0, 1.0, 1e-14), id), 1e-14);
  const TorusElement x = inv_sqrt(cplx(4.0) * id, 3.0, 5.0, 1e-14);
  EXPECT_LE(l1_distance(x, cplx(0.5) * id), 1e-14);
}

TEST_F(TorusTest, inv_sqrt_of_hh) {
  const TorusElement P = hh_element(p5);
  const SpectralEnclosure enc = spectral_enclosure(P);
  ASSERT_GT(enc.floor, 0.0);
  const InvSqrtResult r = inv_sqrt_detailed(P, enc.floor, enc.ceiling, 1e-12);
  EXPECT_LE(r.residual, 1e-10);
  const TorusElement xpx = multiply(multiply(r.x, P), r.x);
  EXPECT_LE(l1_distance(xpx, TorusElement::identity(P.commutation())), 1e-10);
  EXPECT_LE(max_abs_diff(r.x, adjoint(r.x)), 1e-13);
  EXPECT_LE(l1_norm(multiply(r.x, P) - multiply(P, r.x)), 1e-12);
  for (int k = 0; k < 20; ++k) {
    const cplx z1 = oracle::e(oracle::uniform(0, 1)), z2 = oracle::e(oracle::uniform(0, 1));
    const Eigen::MatrixXcd want = inv_sqrt_oracle(rep_oracle(P, z1, z2));
    EXPECT_LE((matrix_at(r.x, z1, z2) - want).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST_F(TorusTest, inv_sqrt_rejects_bad_enclosure) {
  const TorusElement neg = cplx(-1.0) * TorusElement::identity(comms[0]);
  EXPECT_THROW(inv_sqrt(neg, 0.5, 1.0, 1e-12), ConvergenceError);
  try {
    inv_sqrt_detailed(neg, 0.5, 1.0, 1e-12, 50);
  } catch (const ConvergenceError& e) {
    EXPECT_FALSE(e.history().empty());
  }
}

TEST_F(TorusTest, spectral_enclosure_contains_eigenvalues) {
  const TorusElement P = hh_element(p5);
  const SpectralEnclosure enc = spectral_enclosure(P);
  EXPECT_LE(enc.floor, enc.grid_min);
  EXPECT_GE(enc.ceiling, enc.grid_max);
  for (int k = 0; k < 50; ++k) {
    const cplx z1 = oracle::e(oracle::uniform(0, 1)), z2 = oracle::e(oracle::uniform(0, 1));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rep_oracle(P, z1, z2));
    EXPECT_GE(es.eigenvalues().minCoeff(), enc.floor);
    EXPECT_LE(es.eigenvalues().maxCoeff(), enc.ceiling);
  }
}

}  // namespace
