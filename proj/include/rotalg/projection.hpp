#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rotalg/bimodule.hpp"
#include "rotalg/matrix_bundle.hpp"
#include "rotalg/torus.hpp"

namespace rotalg {

struct VerifyTolerances {
  double idempotent = 1e-8;
  double self_adjoint = 1e-10;
  double trace = 1e-8;
  double fourier_product = 1e-8;  // ||e sigma(e)||
  double flip = 1e-10;            // ||sigma^2(e) - e||
  double eigen_cluster = 1e-6;
};

struct VerifyOptions {
  std::optional<double> expected_trace;
  bool fourier = true;  // check e sigma(e) = 0 and sigma^2(e) = e
  int grid_n = kDefaultGrid;
  VerifyTolerances tol;
};

struct Residual {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool checked = true;
  bool pass() const { return !checked || value <= tolerance; }
};

struct ProjectionDiagnostics {
  std::vector<Residual> residuals;  // fixed order: self_adjoint, idempotent, trace, e_sigma_e, flip, eigen_cluster
  double trace = 0.0;
  double idempotent_sup = 0.0;      // largest grid norm of e^2 - e (rational parameter only)
  double self_adjoint_sup = 0.0;
  bool has_bundle = false;
  bool pass() const;
  const Residual* find(const std::string& name) const;
};

// l1 residuals, dropped mass included, plus matrix-bundle checks when the
// parameter is rational.
ProjectionDiagnostics verify_projection(const TorusElement& e, const VerifyOptions& opt = {});

// f = e + sigma(e) is a Fourier-invariant projection of trace 2 tau(e) when
// e sigma(e) = 0 and sigma^2(e) = e.
struct FourierSumCheck {
  double idempotent = 0.0;  // ||f^2 - f||_1
  double invariance = 0.0;  // ||sigma(f) - f||_1
  double trace = 0.0;
  double trace_error = 0.0;  // |tau(f) - expected|
  bool pass = false;
};
FourierSumCheck fourier_sum_check(const TorusElement& e, double expected_trace, double tol_idempotent = 2e-8,
                                  double tol_invariance = 1e-8, double tol_trace = 2e-8);

struct BuildOptions {
  bool extended = false;       // admit theta up to 0.2427 when the refined Neumann sum is below 1
  double inv_sqrt_tol = 1e-12;
  double quad_tol = 1e-13;
  int grid_n = kDefaultGrid;
};

struct ProjectionResult {
  ModuliParams params;
  TorusElement P;  // <h,h>_Dperp
  TorusElement a;  // P^{-1/2}
  TorusElement e;  // <ha,ha>_D
  SpectralEnclosure enclosure;
  double inv_sqrt_residual = 0.0;
  double dperp_identity_residual = 0.0;  // l1 distance of <ha,ha>_Dperp from 1
  int support_m = 0, support_n = 0;      // box of the assembled projection
  ProjectionDiagnostics diagnostics;
};

// Largest theta the build accepts, with and without the refinement.
double certified_theta_limit();
inline constexpr double kExtendedThetaLimit = 0.2427;

ProjectionResult build_projection(const ModuliParams& params, const BuildOptions& opt = {});

// Substitutes U1^a U2^b -> W1^a W2^b with W1 = lambda^{mn/2} U1^m U2^n and
// W2 = sigma(W1), lambda = e(-theta), carrying an element of the algebra with
// parameter (m^2 + n^2) theta + k into the one with parameter theta.
TorusElement embed_cor12(const TorusElement& e, int m, int n, int k, const ModuliParams& params_theta);

}  // namespace rotalg
