#include "rotalg/matrix_bundle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "rotalg/errors.hpp"
#include "rotalg/parallel.hpp"

namespace rotalg {

namespace {

Rational reduced(const TorusElement& a) {
  const auto& r = a.commutation().rational();
  if (!r)
    throw UnsupportedDomain(
        "matrix representations need a rational commutation parameter; use l1 norm bounds for irrational values");
  return r->frac();
}

}  // namespace

Eigen::MatrixXcd matrix_at(const TorusElement& a, cplx z1, cplx z2) {
  const Rational w = reduced(a);
  const int q = static_cast<int>(w.den());
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(q, q);
  if (a.empty()) return M;
  std::vector<cplx> root(static_cast<std::size_t>(q));
  for (int t = 0; t < q; ++t) root[static_cast<std::size_t>(t)] = unit(Rational(t, q));
  std::vector<cplx> pow1, pow2;
  for (int m = a.m_min(); m <= a.m_max(); ++m) pow1.push_back(std::pow(z1, m));
  for (int n = a.n_min(); n <= a.n_max(); ++n) pow2.push_back(std::pow(z2, n));
  const std::int64_t p = w.num();
  a.for_each([&](int m, int n, const cplx& c) {
    const cplx zz = c * pow1[static_cast<std::size_t>(m - a.m_min())] * pow2[static_cast<std::size_t>(n - a.n_min())];
    const int shift = ((n % q) + q) % q;
    const std::int64_t step = ((p * m) % q + q) % q;
    for (int k = 0; k < q; ++k) {
      const int j = (k + shift) % q;
      M(j, k) += zz * root[static_cast<std::size_t>((j * step) % q)];
    }
  });
  return M;
}

MatrixBundle matrix_rep(const TorusElement& a, int grid_n) {
  const Rational w = reduced(a);
  if (grid_n < 1) throw std::domain_error("grid_n must be positive");
  MatrixBundle b;
  b.q = static_cast<int>(w.den());
  b.grid_n = grid_n;
  b.values.resize(static_cast<std::size_t>(grid_n) * grid_n);
  parallel_for(b.values.size(), [&](std::size_t idx) {
    const int i1 = static_cast<int>(idx) / grid_n, i2 = static_cast<int>(idx) % grid_n;
    b.values[idx] = matrix_at(a, unit(Rational(i1, grid_n)), unit(Rational(i2, grid_n)));
  });
  return b;
}

double bundle_sup_norm(const MatrixBundle& b) {
  std::vector<double> norms(b.values.size());
  parallel_for(b.values.size(), [&](std::size_t i) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b.values[i]);
    norms[i] = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  });
  return norms.empty() ? 0.0 : *std::max_element(norms.begin(), norms.end());
}

NormBounds op_norm_bounds(const TorusElement& a, int grid_n) {
  NormBounds nb;
  nb.upper = l1_norm(a) + a.dropped_mass();
  if (a.commutation().rational()) nb.lower = bundle_sup_norm(matrix_rep(a, grid_n));
  return nb;
}

std::vector<double> bundle_eigenvalues(const MatrixBundle& b) {
  std::vector<Eigen::VectorXd> per(b.values.size());
  parallel_for(b.values.size(), [&](std::size_t i) {
    const Eigen::MatrixXcd H = 0.5 * (b.values[i] + b.values[i].adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
    per[i] = es.eigenvalues();
  });
  std::vector<double> out;
  for (const auto& v : per) out.insert(out.end(), v.data(), v.data() + v.size());
  return out;
}

SpectralEnclosure spectral_enclosure(const TorusElement& a, int grid_n) {
  const auto ev = bundle_eigenvalues(matrix_rep(a, grid_n));
  SpectralEnclosure s;
  s.grid_min = *std::min_element(ev.begin(), ev.end());
  s.grid_max = *std::max_element(ev.begin(), ev.end());
  double weighted = 0.0;
  a.for_each([&](int m, int n, const cplx& c) { weighted += std::abs(c) * (std::abs(m) + std::abs(n)); });
  // Every torus point is within 1/(2 grid_n) turns of a grid point in each coordinate.
  s.slack = std::numbers::pi / grid_n * weighted;
  s.tail = a.dropped_mass();
  s.floor = s.grid_min - s.slack - s.tail;
  s.ceiling = s.grid_max + s.slack + s.tail;
  return s;
}

}  // namespace rotalg
