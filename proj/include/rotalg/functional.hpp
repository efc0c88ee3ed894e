#pragma once

#include <vector>

#include "rotalg/torus.hpp"

namespace rotalg {

struct InvSqrtResult {
  TorusElement x;
  double residual = 0.0;  // l1 bound on ||x p x - 1||, dropped mass included
  int terms = 0;
  std::vector<double> increments;
};

// p^{-1/2} for a self-adjoint p whose spectrum lies in [floor, ceiling], 0 < floor.
// With c = 2/(floor + ceiling) and y = 1 - c p the binomial series
//   x = sqrt(c) sum_k binom(2k, k) 4^{-k} y^k
// converges in norm; it stops once the l1 increment is below tol/10 and the
// a posteriori residual is below tol. Throws ConvergenceError otherwise.
InvSqrtResult inv_sqrt_detailed(const TorusElement& p, double floor, double ceiling, double tol,
                                int max_terms = 4000);

TorusElement inv_sqrt(const TorusElement& p, double floor, double ceiling, double tol);

}  // namespace rotalg
