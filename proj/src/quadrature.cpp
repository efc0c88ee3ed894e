#include "rotalg/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "rotalg/errors.hpp"

namespace rotalg::quad {

namespace {

Rule compute_rule(int order) {
  Rule r;
  r.nodes.resize(static_cast<std::size_t>(order));
  r.weights.resize(static_cast<std::size_t>(order));
  for (int i = 0; i < order; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= order; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = order * (x * p1 - p0) / (x * x - 1.0);
    r.nodes[static_cast<std::size_t>(i)] = x;
    r.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

}  // namespace

const Rule& gauss_legendre(int order) {
  static std::mutex mu;
  static std::map<int, Rule> cache;
  if (order < 1) throw std::domain_error("Gauss-Legendre order must be positive");
  std::lock_guard lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
  return it->second;
}

Grid panel_grid(double a, double b, int panels, int order) {
  const Rule& r = gauss_legendre(order);
  Grid g;
  g.x.reserve(static_cast<std::size_t>(panels * order));
  g.w.reserve(static_cast<std::size_t>(panels * order));
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (int k = 0; k < order; ++k) {
      g.x.push_back(mid + 0.5 * h * r.nodes[static_cast<std::size_t>(k)]);
      g.w.push_back(0.5 * h * r.weights[static_cast<std::size_t>(k)]);
    }
  }
  return g;
}

std::complex<double> integrate(const std::function<std::complex<double>(double)>& f, double a, double b,
                               const Settings& s) {
  if (!(b > a)) return {};
  int panels = std::max(1, static_cast<int>(std::ceil((b - a) / s.initial_width)));
  auto estimate = [&](int n) {
    const Grid g = panel_grid(a, b, n, s.order);
    std::complex<double> sum{};
    for (std::size_t i = 0; i < g.x.size(); ++i) sum += g.w[i] * f(g.x[i]);
    return sum;
  };
  std::complex<double> prev = estimate(panels);
  for (int d = 0; d < s.max_doublings; ++d) {
    panels *= 2;
    const std::complex<double> next = estimate(panels);
    if (std::abs(next - prev) <= s.tol) return next;
    prev = next;
  }
  const std::complex<double> last = estimate(panels * 2);
  throw QuadratureError("quadrature did not converge on [" + std::to_string(a) + ", " + std::to_string(b) + "]",
                        std::abs(prev), std::abs(last));
}

std::complex<double> integrate2d(const std::function<std::complex<double>(double, double)>& f, double a, double b,
                                 double c, double d, const Settings& s) {
  int px = std::max(1, static_cast<int>(std::ceil((b - a) / s.initial_width)));
  int py = std::max(1, static_cast<int>(std::ceil((d - c) / s.initial_width)));
  auto estimate = [&](int nx, int ny) {
    const Grid gx = panel_grid(a, b, nx, s.order);
    const Grid gy = panel_grid(c, d, ny, s.order);
    std::complex<double> sum{};
    for (std::size_t i = 0; i < gx.x.size(); ++i)
      for (std::size_t j = 0; j < gy.x.size(); ++j) sum += gx.w[i] * gy.w[j] * f(gx.x[i], gy.x[j]);
    return sum;
  };
  std::complex<double> prev = estimate(px, py);
  for (int k = 0; k < s.max_doublings; ++k) {
    px *= 2;
    py *= 2;
    const std::complex<double> next = estimate(px, py);
    if (std::abs(next - prev) <= s.tol) return next;
    prev = next;
  }
  throw QuadratureError("2-D quadrature did not converge", std::abs(prev), std::abs(estimate(px * 2, py * 2)));
}

}  // namespace rotalg::quad
