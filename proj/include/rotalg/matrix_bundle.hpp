#pragma once

#include <Eigen/Dense>
#include <vector>

#include "rotalg/torus.hpp"

// For rational vartheta = p/q the rotation algebra is a bundle of q x q matrix
// algebras over the 2-torus:
//
//   G1 -> z1 diag(1, w, ..., w^{q-1}),  G2 -> z2 S,  w = e(p/q),  S e_k = e_{k+1}.
//
// Matrices are sampled on a uniform grid of (z1, z2) and used for verification only.
namespace rotalg {

struct MatrixBundle {
  int q = 1;
  int grid_n = 0;
  std::vector<Eigen::MatrixXcd> values;  // index i1 * grid_n + i2 at z = (e(i1/grid_n), e(i2/grid_n))

  const Eigen::MatrixXcd& at(int i1, int i2) const { return values[static_cast<std::size_t>(i1 * grid_n + i2)]; }
};

inline constexpr int kDefaultGrid = 16;

// Throws UnsupportedDomain for irrational vartheta; use l1 bounds there.
MatrixBundle matrix_rep(const TorusElement& a, int grid_n = kDefaultGrid);

// Image of a at one point of the torus.
Eigen::MatrixXcd matrix_at(const TorusElement& a, cplx z1, cplx z2);

struct NormBounds {
  double lower = 0.0;  // largest spectral norm over the grid
  double upper = 0.0;  // l1 norm plus dropped mass
};
NormBounds op_norm_bounds(const TorusElement& a, int grid_n = kDefaultGrid);

// Largest matrix spectral norm over the bundle.
double bundle_sup_norm(const MatrixBundle& b);

struct SpectralEnclosure {
  double grid_min = 0.0, grid_max = 0.0;  // extreme eigenvalues at the grid points
  double slack = 0.0;                     // Lipschitz allowance between grid points
  double tail = 0.0;                      // l1 mass not represented by the coefficients
  double floor = 0.0, ceiling = 0.0;      // certified enclosure of the spectrum
};

// Enclosure of the spectrum of a self-adjoint element: eigenvalue extremes on
// the grid, widened by (pi/grid_n) sum |c| (|m| + |n|) and by the dropped mass.
SpectralEnclosure spectral_enclosure(const TorusElement& a, int grid_n = kDefaultGrid);

// Hermitian part eigenvalues at every grid point, concatenated.
std::vector<double> bundle_eigenvalues(const MatrixBundle& b);

}  // namespace rotalg
