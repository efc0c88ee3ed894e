#include "rotalg/projection.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "rotalg/certify.hpp"
#include "rotalg/errors.hpp"
#include "rotalg/functional.hpp"

namespace rotalg {

bool ProjectionDiagnostics::pass() const {
  return std::all_of(residuals.begin(), residuals.end(), [](const Residual& r) { return r.pass(); });
}

const Residual* ProjectionDiagnostics::find(const std::string& name) const {
  for (const auto& r : residuals)
    if (r.name == name) return &r;
  return nullptr;
}

ProjectionDiagnostics verify_projection(const TorusElement& e, const VerifyOptions& opt) {
  ProjectionDiagnostics d;
  const VerifyTolerances& t = opt.tol;
  const TorusElement star = adjoint(e);
  const TorusElement sq = multiply(e, e);
  d.trace = trace(e).real();
  d.residuals.push_back({"self_adjoint", l1_distance(e, star), t.self_adjoint});
  d.residuals.push_back({"idempotent", l1_distance(sq, e), t.idempotent});
  d.residuals.push_back({"trace", opt.expected_trace ? std::abs(trace(e) - *opt.expected_trace) : 0.0, t.trace,
                         opt.expected_trace.has_value()});
  if (opt.fourier) {
    const TorusElement s = fourier_sigma(e);
    const TorusElement es = multiply(e, s);
    d.residuals.push_back({"e_sigma_e", l1_norm(es) + es.dropped_mass(), t.fourier_product});
    d.residuals.push_back({"flip", l1_distance(fourier_sigma(s), e), t.flip});
  } else {
    d.residuals.push_back({"e_sigma_e", 0.0, t.fourier_product, false});
    d.residuals.push_back({"flip", 0.0, t.flip, false});
  }
  if (e.commutation().rational()) {
    d.has_bundle = true;
    const MatrixBundle b = matrix_rep(e, opt.grid_n);
    const MatrixBundle bsq = matrix_rep(sq - e, opt.grid_n);
    const MatrixBundle bsa = matrix_rep(e - star, opt.grid_n);
    d.idempotent_sup = bundle_sup_norm(bsq);
    d.self_adjoint_sup = bundle_sup_norm(bsa);
    double cluster = 0.0;
    for (double v : bundle_eigenvalues(b)) cluster = std::max(cluster, std::min(std::abs(v), std::abs(v - 1.0)));
    d.residuals.push_back({"eigen_cluster", cluster, t.eigen_cluster});
  } else {
    d.residuals.push_back({"eigen_cluster", 0.0, t.eigen_cluster, false});
  }
  return d;
}

FourierSumCheck fourier_sum_check(const TorusElement& e, double expected_trace, double tol_idempotent,
                                  double tol_invariance, double tol_trace) {
  const TorusElement f = e + fourier_sigma(e);
  FourierSumCheck c;
  c.idempotent = l1_distance(multiply(f, f), f);
  c.invariance = l1_distance(fourier_sigma(f), f);
  c.trace = trace(f).real();
  c.trace_error = std::abs(trace(f) - cplx{expected_trace}) + f.dropped_mass();
  c.pass = c.idempotent <= tol_idempotent && c.invariance <= tol_invariance && c.trace_error <= tol_trace;
  return c;
}

double certified_theta_limit() {
  static const double limit = certify::threshold().theta_star;
  return limit;
}

namespace {

constexpr double kRingLevel = 1e-14;

struct Rings {
  double outer_m = 0.0, inner_m = 0.0;  // l1 mass on |m| = M and |m| = M - 1
  double outer_n = 0.0, inner_n = 0.0;
  double max_m = 0.0, max_n = 0.0;      // largest |raw| on |m| >= M - 1, |n| >= N - 1
};

Rings rings(const InnerProductCoeffs& ip, int M, int N) {
  Rings r;
  for (const auto& [key, v] : ip.coeffs) {
    const int am = std::abs(key.first), an = std::abs(key.second);
    const double a = std::abs(v);
    if (am == M) r.outer_m += a;
    if (am == M - 1) r.inner_m += a;
    if (an == N) r.outer_n += a;
    if (an == N - 1) r.inner_n += a;
    if (am >= M - 1) r.max_m = std::max(r.max_m, a);
    if (an >= N - 1) r.max_n = std::max(r.max_n, a);
  }
  return r;
}

// Edge extent at which the coefficients should reach the ring level, from the
// decay rate of the row maxima over the last four rows. Gaussian decay only
// speeds up further out, so the estimate errs on the large side.
int predicted_edge(const InnerProductCoeffs& ip, int M, bool first_axis, double level) {
  std::vector<double> peak(static_cast<std::size_t>(M + 1), 0.0);
  for (const auto& [key, v] : ip.coeffs) {
    const int k = std::abs(first_axis ? key.first : key.second);
    if (k <= M) peak[static_cast<std::size_t>(k)] = std::max(peak[static_cast<std::size_t>(k)], std::abs(v));
  }
  const int lag = std::min(4, M);
  const double outer = std::max(peak[static_cast<std::size_t>(M)], peak[static_cast<std::size_t>(M - 1)]);
  const double inner = peak[static_cast<std::size_t>(M - lag)];
  const int fallback = M * 3 / 2;
  if (!(outer > 0.0) || !(inner > outer) || lag < 2) return fallback;
  const double rate = std::log(inner / outer) / lag;
  const int extra = static_cast<int>(std::ceil(std::log(outer / level) / rate)) + 2;
  return std::clamp(M + extra, M + 2, 2 * M);
}

// Mass beyond an edge, extrapolating the last two rings geometrically.
double beyond(double outer, double inner) {
  const double q = inner > 0.0 ? std::clamp(outer / inner, 0.0, 0.9) : 0.9;
  return outer * q / (1.0 - q);
}

}  // namespace

ProjectionResult build_projection(const ModuliParams& params, const BuildOptions& opt) {
  if (!params.exact_theta()) throw UnsupportedDomain("the projection build needs a rational theta");
  const double theta = params.theta();
  const double limit = certified_theta_limit();
  if (!(theta < limit)) {
    if (!opt.extended)
      throw std::domain_error("theta = " + params.exact_theta()->str() +
                              " is outside the certified range 0 < theta < " + std::to_string(limit) +
                              " where B(alpha) < 1; use --extended for theta <= 0.2427");
    if (theta > kExtendedThetaLimit)
      throw std::domain_error("theta = " + params.exact_theta()->str() + " exceeds the extended limit 0.2427");
    const double gap = certify::neumann_gap(params);
    if (!(gap < 1.0))
      throw std::domain_error("refined Neumann sum " + std::to_string(gap) + " is not below 1 at theta = " +
                              params.exact_theta()->str());
  }

  const HFunction H = build_h(params);
  TorusElement P = hh_element(params);
  const SpectralEnclosure enc = spectral_enclosure(P, opt.grid_n);
  if (!(enc.floor > 0.0)) throw NumericError("spectral floor of <h,h> is not positive: " + std::to_string(enc.floor));
  InvSqrtResult inv = inv_sqrt_detailed(P, enc.floor, enc.ceiling, opt.inv_sqrt_tol);

  const SchwartzFn ha = right_action(H.h, inv.x, params);

  // <ha, ha>_Dperp should be the identity on the support of P.
  const int pm = std::max(std::abs(P.m_min()), std::abs(P.m_max()));
  const int pn = std::max(std::abs(P.n_min()), std::abs(P.n_max()));
  const TorusElement unit_check = assemble(dperp_inner_grid(ha, ha, pm, pn, params, opt.quad_tol));
  const double dperp_residual = l1_distance(unit_check, TorusElement::identity(params.dperp_commutation()));

  // D-lattice box: the Gaussian envelope e^{-pi alpha w1^2/2} fixes the first guess for M;
  // both edges grow until the outer rings fall to rounding level.
  int M = static_cast<int>(std::ceil(1.6 * std::sqrt(74.0 / (std::numbers::pi * params.alpha())) * params.beta()));
  int N = 2 * M;
  InnerProductCoeffs ip = d_inner_grid(ha, ha, M, N, params, opt.quad_tol);
  for (int round = 0; round < 6; ++round) {
    const double c00 = std::abs(ip.at(0, 0));
    const Rings r = rings(ip, M, N);
    const bool grow_m = r.max_m > kRingLevel * c00, grow_n = r.max_n > kRingLevel * c00;
    if (!grow_m && !grow_n) break;
    const int nm = grow_m ? predicted_edge(ip, M, true, kRingLevel * c00) : M;
    const int nn = grow_n ? predicted_edge(ip, N, false, kRingLevel * c00) : N;
    M = nm;
    N = nn;
    ip = d_inner_grid(ha, ha, M, N, params, opt.quad_tol);
  }
  {
    const Rings r = rings(ip, M, N);
    ip.tail_bound = 2.0 * (beyond(r.outer_m, r.inner_m) + beyond(r.outer_n, r.inner_n));
  }
  TorusElement e = assemble(ip);
  e.prune(kPruneThreshold);

  VerifyOptions vo;
  vo.expected_trace = theta;
  vo.grid_n = opt.grid_n;
  ProjectionResult r{params, std::move(P), std::move(inv.x), std::move(e), enc, inv.residual, dperp_residual,
                     M, N, {}};
  r.diagnostics = verify_projection(r.e, vo);
  return r;
}

TorusElement embed_cor12(const TorusElement& e, int m, int n, int k, const ModuliParams& params_theta) {
  const auto& q = params_theta.exact_theta();
  const std::int64_t s = static_cast<std::int64_t>(m) * m + static_cast<std::int64_t>(n) * n;
  if (s == 0) throw std::domain_error("embedding needs (m, n) != (0, 0)");
  const double alpha = s * params_theta.theta() + k;
  if (!(alpha > 0.0 && alpha < certified_theta_limit()))
    throw std::domain_error("(m^2+n^2) theta + k = " + std::to_string(alpha) + " is outside the certified range");
  if (q) {
    const Rational expect = Rational(s) * *q + Rational(k);
    if (!(e.commutation().rational() && *e.commutation().rational() == expect))
      throw std::domain_error("element does not live in the algebra with parameter " + expect.str());
  } else if (std::abs(e.commutation().value() - alpha) > 1e-15) {
    throw std::domain_error("element parameter does not match (m^2+n^2) theta + k");
  }

  const Commutation c = params_theta.d_commutation();
  const std::int64_t mn = static_cast<std::int64_t>(m) * n;
  const cplx lam = q ? unit(Rational(-q->num() * mn, 2 * q->den())) : unit(-params_theta.theta() * mn / 2.0);
  const TorusElement W1 = TorusElement::monomial(c, m, n, lam);
  const TorusElement W2 = fourier_sigma(W1);

  auto powers = [&](const TorusElement& W, int lo, int hi) {
    std::map<int, TorusElement> out;
    out.emplace(0, TorusElement::identity(c));
    const TorusElement inv = adjoint(W);
    for (int j = 1; j <= hi; ++j) out.emplace(j, multiply(out.at(j - 1), W));
    for (int j = -1; j >= lo; --j) out.emplace(j, multiply(out.at(j + 1), inv));
    return out;
  };
  const auto p1 = powers(W1, std::min(0, e.m_min()), std::max(0, e.m_max()));
  const auto p2 = powers(W2, std::min(0, e.n_min()), std::max(0, e.n_max()));

  TorusElement out(c);
  e.for_each([&](int a, int b, const cplx& v) {
    const TorusElement w = multiply(p1.at(a), p2.at(b));
    w.for_each([&](int x, int y, const cplx& u) { out.add(x, y, v * u); });
  });
  out.add_dropped_mass(e.dropped_mass());
  return out;
}

}  // namespace rotalg
