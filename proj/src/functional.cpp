#include "rotalg/functional.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "rotalg/errors.hpp"

namespace rotalg {

InvSqrtResult inv_sqrt_detailed(const TorusElement& p, double floor, double ceiling, double tol, int max_terms) {
  if (!(floor > 0.0) || !(ceiling >= floor))
    throw std::domain_error("inv_sqrt needs 0 < floor <= ceiling, got [" + std::to_string(floor) + ", " +
                            std::to_string(ceiling) + "]");
  if (l1_distance(p, adjoint(p)) > 1e-12) throw std::domain_error("inv_sqrt needs a self-adjoint element");

  const Commutation comm = p.commutation();
  const TorusElement one = TorusElement::identity(comm);
  const double c = 2.0 / (floor + ceiling);
  const TorusElement y = one - c * p;
  const double root_c = std::sqrt(c);

  InvSqrtResult r{root_c * one, 0.0, 1, {}};
  TorusElement power = one;
  double weight = 1.0;
  for (int k = 1; k < max_terms; ++k) {
    power = multiply(power, y);
    weight *= (2.0 * k - 1.0) / (2.0 * k);
    const TorusElement step = (root_c * weight) * power;
    const double inc = l1_norm(step);
    r.x += step;
    r.terms = k + 1;
    r.increments.push_back(inc);
    if (inc <= tol / 10.0) {
      // The certificate is the residual of x as stored: mass pruned from the
      // powers is not an error in x, while the tail of p still counts.
      TorusElement xs = 0.5 * (r.x + adjoint(r.x));
      xs.clear_dropped_mass();
      const double res = l1_distance(multiply(multiply(xs, p), xs), one);
      r.residual = res;
      if (res <= tol) {
        r.x = std::move(xs);
        return r;
      }
      // Nothing left to add: the residual sits on its rounding floor.
      if (inc == 0.0) break;
    }
  }
  char msg[160];
  std::snprintf(msg, sizeof msg, "inverse square root did not reach residual %.3g in %d terms (last residual %.3g)",
                tol, r.terms, r.residual);
  throw ConvergenceError(msg, r.increments);
}

TorusElement inv_sqrt(const TorusElement& p, double floor, double ceiling, double tol) {
  return inv_sqrt_detailed(p, floor, ceiling, tol).x;
}

}  // namespace rotalg
