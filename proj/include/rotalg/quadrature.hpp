#pragma once

#include <complex>
#include <functional>
#include <vector>

// Composite Gauss-Legendre quadrature for smooth, rapidly decaying integrands.
// Panel counts are doubled until two successive estimates agree.
namespace rotalg::quad {

struct Rule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Gauss-Legendre rule of the given order (cached).
const Rule& gauss_legendre(int order);

struct Grid {
  std::vector<double> x;
  std::vector<double> w;
};

Grid panel_grid(double a, double b, int panels, int order = 16);

struct Settings {
  double tol = 1e-13;      // absolute agreement of successive estimates
  int order = 16;
  double initial_width = 0.5;  // initial panel width
  int max_doublings = 10;
};

// Integrates f over [a, b]; throws QuadratureError when panel doubling does not settle.
std::complex<double> integrate(const std::function<std::complex<double>(double)>& f, double a, double b,
                               const Settings& s = {});

// Tensor-product version on [a,b] x [c,d].
std::complex<double> integrate2d(const std::function<std::complex<double>(double, double)>& f, double a, double b,
                                 double c, double d, const Settings& s = {});

}  // namespace rotalg::quad
