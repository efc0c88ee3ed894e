#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rotalg/schwartz.hpp"

// Numerical certificates for the invertibility bound on <h,h>_Dperp and the
// theta-function inequalities behind it.
namespace rotalg::certify {

struct CertReport {
  std::string claim;
  double value = 0.0;                  // headline computed value
  std::optional<double> reference;        // published value, where one is printed
  double tolerance = 0.0;              // |value - reference| bound, or 0 for inequality claims
  bool pass = false;
  double runtime_s = 0.0;
  std::string parameters;
  std::vector<std::pair<std::string, double>> details;  // secondary values in a fixed order
};

// Constant in front of the psi ratio bound, and the one assembled from
// its printed ingredients 1.00001 * 1.09 / 0.91.
inline constexpr double kLemmaConstant = 1.19782;
inline constexpr double kAssembledConstant = 1.00001 * 1.09 / 0.91;

// B(alpha) = 1.19782 theta3(0,2i alpha)/theta3(pi/2,2i alpha) [theta3(0, i alpha beta^2/2) - 1].
double bound_B(double alpha, double constant = kLemmaConstant);

struct Threshold {
  double alpha_star = 0.0;
  double theta_star = 0.0;
};
// Root of B(alpha) = 1 by bisection to 1e-7.
Threshold threshold();

struct BoundCurve {
  std::vector<double> alpha;
  std::vector<double> B;
  std::optional<std::pair<double, double>> bracket;  // consecutive samples straddling B = 1
};
BoundCurve bound_curve(double a0, double a1, double step);

CertReport threshold_report();
CertReport fact_F1();
CertReport fact_F2(double alpha);

struct RatioSup {
  int n = 0;
  double grid_sup = 0.0;       // max over the grid of |psi_n / psi_0|
  double certified_sup = 0.0;  // grid_sup plus the Lipschitz allowance
};

// sup_t |psi_n(t) / psi_0(t)| for |n| <= n_range on a 4000-point grid.
std::vector<RatioSup> psi_ratio_sups(const ModuliParams& params, int n_range, int grid = 4000);
CertReport lemma43_check(const ModuliParams& params, int n_range);

// sum_{n != 0} e^{-pi alpha beta^2 n^2/2} ||psi_0^{-1} psi_n|| with certified sups for |n| <= 8
// and the ratio bound for the tail.
double neumann_gap(const ModuliParams& params);
// The same sum with every norm replaced by the ratio bound; equals B(alpha).
double neumann_gap_coarse(const ModuliParams& params);

struct RemarkWindow {
  double gap_at_limit = 0.0;  // refined sum at theta = 0.2427
  double crossing = 0.0;      // theta where the refined sum reaches 1
  double lo = 0.0, hi = 0.0;  // bracket for the crossing after bisection
};
RemarkWindow remark_window();
CertReport remark_report();

CertReport prop44_check(const std::vector<double>& alpha_samples);
CertReport singularity_remark(const ModuliParams& params);

// Every certificate in a fixed order; the theta-dependent checks run at
// theta = 1/5 unless another parameter is given.
std::vector<CertReport> run_all();
std::vector<CertReport> run_all(const ModuliParams& at);

// Constant ratio theta3(0, 4i) / theta3(pi/2, 4i) bounding the tau_alpha quotient.
double tau_quotient_bound();

}  // namespace rotalg::certify
