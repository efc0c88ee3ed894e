#include "rotalg/torus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rotalg {

std::optional<std::int64_t> Commutation::dimension() const {
  if (!exact_) return std::nullopt;
  return exact_->frac().den();
}

cplx Commutation::phase(std::int64_t k) const {
  if (exact_) return unit(*exact_, k);
  return unit(value_ * static_cast<double>(k));
}

bool operator==(const Commutation& a, const Commutation& b) {
  if (a.exact_ && b.exact_) return *a.exact_ == *b.exact_;
  return a.value_ == b.value_;
}

TorusElement::TorusElement(Commutation c, int m0, int m1, int n0, int n1) : comm_(c) {
  if (m1 >= m0 && n1 >= n0) grow_to(m0, m1, n0, n1);
}

TorusElement TorusElement::monomial(Commutation c, int m, int n, cplx coeff) {
  TorusElement t(c, m, m, n, n);
  t.set(m, n, coeff);
  return t;
}

cplx TorusElement::coeff(int m, int n) const {
  if (data_.empty() || m < m0_ || m > m1_ || n < n0_ || n > n1_) return {};
  return data_[static_cast<std::size_t>((m - m0_) * width_n() + (n - n0_))];
}

void TorusElement::set(int m, int n, cplx v) {
  if (data_.empty()) {
    if (v == cplx{}) return;
    grow_to(m, m, n, n);
  } else if (m < m0_ || m > m1_ || n < n0_ || n > n1_) {
    if (v == cplx{}) return;
    grow_to(std::min(m, m0_), std::max(m, m1_), std::min(n, n0_), std::max(n, n1_));
  }
  data_[static_cast<std::size_t>((m - m0_) * width_n() + (n - n0_))] = v;
}

void TorusElement::grow_to(int m0, int m1, int n0, int n1) {
  std::vector<cplx> fresh(static_cast<std::size_t>(m1 - m0 + 1) * static_cast<std::size_t>(n1 - n0 + 1));
  const int w = n1 - n0 + 1;
  if (!data_.empty()) {
    for (int m = m0_; m <= m1_; ++m)
      for (int n = n0_; n <= n1_; ++n)
        fresh[static_cast<std::size_t>((m - m0) * w + (n - n0))] =
            data_[static_cast<std::size_t>((m - m0_) * width_n() + (n - n0_))];
  }
  data_ = std::move(fresh);
  m0_ = m0;
  m1_ = m1;
  n0_ = n0;
  n1_ = n1;
}

void TorusElement::shrink() {
  int lo_m = std::numeric_limits<int>::max(), hi_m = std::numeric_limits<int>::min();
  int lo_n = lo_m, hi_n = hi_m;
  for_each([&](int m, int n, const cplx&) {
    lo_m = std::min(lo_m, m);
    hi_m = std::max(hi_m, m);
    lo_n = std::min(lo_n, n);
    hi_n = std::max(hi_n, n);
  });
  if (lo_m > hi_m) {
    data_.clear();
    m0_ = n0_ = 0;
    m1_ = n1_ = -1;
    return;
  }
  if (lo_m == m0_ && hi_m == m1_ && lo_n == n0_ && hi_n == n1_) return;
  std::vector<cplx> fresh(static_cast<std::size_t>(hi_m - lo_m + 1) * static_cast<std::size_t>(hi_n - lo_n + 1));
  const int w = hi_n - lo_n + 1;
  for (int m = lo_m; m <= hi_m; ++m)
    for (int n = lo_n; n <= hi_n; ++n) fresh[static_cast<std::size_t>((m - lo_m) * w + (n - lo_n))] = coeff(m, n);
  data_ = std::move(fresh);
  m0_ = lo_m;
  m1_ = hi_m;
  n0_ = lo_n;
  n1_ = hi_n;
}

void TorusElement::prune(double threshold) {
  for (auto& v : data_) {
    const double a = std::abs(v);
    if (a != 0.0 && a < threshold) {
      dropped_ += a;
      v = {};
    }
  }
  shrink();
}

int TorusElement::support_radius() const {
  int r = 0;
  for_each([&](int m, int n, const cplx&) { r = std::max({r, std::abs(m), std::abs(n)}); });
  return r;
}

std::size_t TorusElement::nonzeros() const {
  return static_cast<std::size_t>(std::count_if(data_.begin(), data_.end(), [](const cplx& v) { return v != cplx{}; }));
}

namespace {

void require_same(const TorusElement& a, const TorusElement& b) {
  if (!(a.commutation() == b.commutation()))
    throw std::domain_error("torus elements live in algebras with different commutation parameters");
}

}  // namespace

TorusElement& TorusElement::operator+=(const TorusElement& o) {
  require_same(*this, o);
  o.for_each([&](int m, int n, const cplx& v) { add(m, n, v); });
  dropped_ += o.dropped_;
  return *this;
}

TorusElement& TorusElement::operator-=(const TorusElement& o) {
  require_same(*this, o);
  o.for_each([&](int m, int n, const cplx& v) { add(m, n, -v); });
  dropped_ += o.dropped_;
  return *this;
}

TorusElement& TorusElement::operator*=(cplx s) {
  for (auto& v : data_) v *= s;
  dropped_ *= std::abs(s);
  return *this;
}

TorusElement operator+(TorusElement a, const TorusElement& b) { return a += b; }
TorusElement operator-(TorusElement a, const TorusElement& b) { return a -= b; }
TorusElement operator*(cplx s, TorusElement a) { return a *= s; }

TorusElement multiply(const TorusElement& a, const TorusElement& b, double prune) {
  require_same(a, b);
  const Commutation& c = a.commutation();
  if (a.empty() || b.empty()) {
    TorusElement z(c);
    z.add_dropped_mass(l1_norm(a) * b.dropped_mass() + a.dropped_mass() * l1_norm(b) +
                       a.dropped_mass() * b.dropped_mass());
    return z;
  }
  TorusElement out(c, a.m0_ + b.m0_, a.m1_ + b.m1_, a.n0_ + b.n0_, a.n1_ + b.n1_);

  // phase(-b_n * c_m) depends only on the G2 power of the left factor and the
  // G1 power of the right factor.
  const int an = a.width_n();
  const int bm = b.m1_ - b.m0_ + 1;
  std::vector<cplx> table(static_cast<std::size_t>(an) * static_cast<std::size_t>(bm));
  for (int nb = a.n0_; nb <= a.n1_; ++nb)
    for (int mc = b.m0_; mc <= b.m1_; ++mc)
      table[static_cast<std::size_t>((nb - a.n0_) * bm + (mc - b.m0_))] =
          c.phase(-static_cast<std::int64_t>(nb) * mc);

  const int ow = out.width_n();
  const int bw = b.width_n();
  // Nonzero span [lo, hi) of each row of b.
  std::vector<std::pair<int, int>> span(static_cast<std::size_t>(bm));
  for (int r = 0; r < bm; ++r) {
    const cplx* row = &b.data_[static_cast<std::size_t>(r * bw)];
    int lo = 0, hi = bw;
    while (lo < hi && row[lo] == cplx{}) ++lo;
    while (hi > lo && row[hi - 1] == cplx{}) --hi;
    span[static_cast<std::size_t>(r)] = {lo, hi};
  }
  for (int ma = a.m0_; ma <= a.m1_; ++ma)
    for (int na = a.n0_; na <= a.n1_; ++na) {
      const cplx x = a.data_[static_cast<std::size_t>((ma - a.m0_) * an + (na - a.n0_))];
      if (x == cplx{}) continue;
      for (int mc = b.m0_; mc <= b.m1_; ++mc) {
        const auto [lo, hi] = span[static_cast<std::size_t>(mc - b.m0_)];
        if (lo >= hi) continue;
        const cplx xp = x * table[static_cast<std::size_t>((na - a.n0_) * bm + (mc - b.m0_))];
        const cplx* yrow = &b.data_[static_cast<std::size_t>((mc - b.m0_) * bw)];
        cplx* orow = &out.data_[static_cast<std::size_t>((ma + mc - out.m0_) * ow + (na + b.n0_ - out.n0_))];
        for (int k = lo; k < hi; ++k) orow[k] += xp * yrow[k];
      }
    }
  out.dropped_ = l1_norm(a) * b.dropped_mass() + a.dropped_mass() * l1_norm(b) + a.dropped_mass() * b.dropped_mass();
  out.prune(prune);
  return out;
}

TorusElement adjoint(const TorusElement& a) {
  const Commutation& c = a.commutation();
  TorusElement out(c, -a.m_max(), -a.m_min(), -a.n_max(), -a.n_min());
  a.for_each([&](int m, int n, const cplx& v) {
    out.set(-m, -n, std::conj(v) * c.phase(-static_cast<std::int64_t>(m) * n));
  });
  out.add_dropped_mass(a.dropped_mass());
  return out;
}

cplx trace(const TorusElement& a) { return a.coeff(0, 0); }

double l1_norm(const TorusElement& a) {
  double s = 0.0;
  a.for_each([&](int, int, const cplx& v) { s += std::abs(v); });
  return s;
}

double l1_distance(const TorusElement& a, const TorusElement& b) {
  TorusElement d = a - b;
  return l1_norm(d) + d.dropped_mass();
}

double max_abs_diff(const TorusElement& a, const TorusElement& b) {
  double worst = 0.0;
  a.for_each([&](int m, int n, const cplx& v) { worst = std::max(worst, std::abs(v - b.coeff(m, n))); });
  b.for_each([&](int m, int n, const cplx& v) { worst = std::max(worst, std::abs(v - a.coeff(m, n))); });
  return worst;
}

TorusElement fourier_sigma(const TorusElement& a) {
  const Commutation& c = a.commutation();
  TorusElement out(c, -a.n_max(), -a.n_min(), a.m_min(), a.m_max());
  a.for_each([&](int m, int n, const cplx& v) { out.set(-n, m, v * c.phase(static_cast<std::int64_t>(m) * n)); });
  out.add_dropped_mass(a.dropped_mass());
  return out;
}

}  // namespace rotalg
