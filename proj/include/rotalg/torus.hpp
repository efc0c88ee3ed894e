#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "rotalg/rational.hpp"

// Coefficient calculus of a rotation algebra. An element is a finitely
// supported map (m, n) -> c on monomials G1^m G2^n, where the generators obey
//
//   G1 G2 = e(vartheta) G2 G1.
//
// The D-lattice algebra of the bimodule uses vartheta = theta, the
// complementary one vartheta = 1/theta; products are operator products.
namespace rotalg {

using cplx = std::complex<double>;

class Commutation {
 public:
  static Commutation exact(Rational r) { return Commutation(r.to_double(), r); }
  static Commutation real(double v) { return Commutation(v, std::nullopt); }

  double value() const noexcept { return value_; }
  const std::optional<Rational>& rational() const noexcept { return exact_; }
  // Denominator of vartheta mod 1 (matrix dimension), or nullopt if irrational.
  std::optional<std::int64_t> dimension() const;

  // e(k * vartheta), exact angle reduction when vartheta is rational.
  cplx phase(std::int64_t k) const;

  friend bool operator==(const Commutation& a, const Commutation& b);

 private:
  Commutation(double v, std::optional<Rational> r) : value_(v), exact_(r) {}
  double value_;
  std::optional<Rational> exact_;
};

class TorusElement {
 public:
  explicit TorusElement(Commutation c) : comm_(c) {}
  // Zero element with storage reserved for the box [m0, m1] x [n0, n1].
  TorusElement(Commutation c, int m0, int m1, int n0, int n1);

  static TorusElement identity(Commutation c) { return monomial(c, 0, 0, 1.0); }
  static TorusElement monomial(Commutation c, int m, int n, cplx coeff = 1.0);

  const Commutation& commutation() const noexcept { return comm_; }

  cplx coeff(int m, int n) const;
  void set(int m, int n, cplx v);
  void add(int m, int n, cplx v) { set(m, n, coeff(m, n) + v); }

  bool empty() const noexcept { return data_.empty(); }
  int m_min() const noexcept { return m0_; }
  int m_max() const noexcept { return m1_; }
  int n_min() const noexcept { return n0_; }
  int n_max() const noexcept { return n1_; }
  // Largest |m| or |n| over stored nonzero coefficients.
  int support_radius() const;
  std::size_t nonzeros() const;

  // Visits nonzero coefficients in ascending (m, n) order.
  template <typename F>
  void for_each(F&& f) const {
    const int w = width_n();
    for (int m = m0_; m <= m1_ && !data_.empty(); ++m)
      for (int n = n0_; n <= n1_; ++n) {
        const cplx& v = data_[static_cast<std::size_t>((m - m0_) * w + (n - n0_))];
        if (v != cplx{}) f(m, n, v);
      }
  }

  // l1 mass of coefficients that were dropped while producing this element.
  double dropped_mass() const noexcept { return dropped_; }
  void add_dropped_mass(double d) { dropped_ += d; }
  void clear_dropped_mass() noexcept { dropped_ = 0.0; }

  // Zeroes coefficients with |c| < threshold, accumulating their mass, and
  // shrinks the storage box to the remaining support.
  void prune(double threshold);

  TorusElement& operator+=(const TorusElement& o);
  TorusElement& operator-=(const TorusElement& o);
  TorusElement& operator*=(cplx s);

 private:
  friend TorusElement multiply(const TorusElement&, const TorusElement&, double);
  int width_n() const noexcept { return n1_ - n0_ + 1; }
  void grow_to(int m0, int m1, int n0, int n1);
  void shrink();

  Commutation comm_;
  int m0_ = 0, m1_ = -1, n0_ = 0, n1_ = -1;
  std::vector<cplx> data_;
  double dropped_ = 0.0;
};

inline constexpr double kPruneThreshold = 1e-16;

TorusElement operator+(TorusElement a, const TorusElement& b);
TorusElement operator-(TorusElement a, const TorusElement& b);
TorusElement operator*(cplx s, TorusElement a);

// Twisted convolution: (G1^a G2^b)(G1^c G2^d) = e(-b c vartheta) G1^{a+c} G2^{b+d}.
TorusElement multiply(const TorusElement& a, const TorusElement& b, double prune = kPruneThreshold);

TorusElement adjoint(const TorusElement& a);
cplx trace(const TorusElement& a);
double l1_norm(const TorusElement& a);
// l1 distance plus the dropped mass of both operands.
double l1_distance(const TorusElement& a, const TorusElement& b);
double max_abs_diff(const TorusElement& a, const TorusElement& b);

// Order-four automorphism with sigma(G1) = G2, sigma(G2) = G1^{-1}:
//   sigma(G1^m G2^n) = e(m n vartheta) G1^{-n} G2^m.
TorusElement fourier_sigma(const TorusElement& a);

}  // namespace rotalg
