#include "rotalg/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "rotalg/coeff_file.hpp"
#include "rotalg/errors.hpp"
#include "rotalg/projection.hpp"

namespace rotalg::cli {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* flag(bool b) { return b ? "true" : "false"; }

// Usage and domain problems; mapped to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational parse_theta(const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw UsageError("theta must be an exact rational p/q or a finite decimal: " + std::string(e.what()));
  }
}

void require_build_range(const Rational& theta) {
  const double t = theta.to_double();
  if (!(t > 0.0) || !(t < 0.25))
    throw UsageError("theta = " + theta.str() + " is outside 0 < theta < 1/4; certified threshold theta* = " +
                     num(certified_theta_limit()));
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); }
};

void write_residuals(std::ostream& os, const ProjectionDiagnostics& d) {
  for (const auto& r : d.residuals) {
    os << "residual=" << r.name << " value=" << num(r.value) << " tol=" << num(r.tolerance);
    if (!r.checked) os << " checked=false";
    os << " pass=" << flag(r.pass()) << '\n';
  }
  os << "trace=" << num17(d.trace) << '\n';
  if (d.has_bundle) os << "idempotent_sup=" << num(d.idempotent_sup) << " self_adjoint_sup=" << num(d.self_adjoint_sup) << '\n';
  os << "pass=" << flag(d.pass()) << '\n';
}

void name_failures(std::ostream& err, const ProjectionDiagnostics& d) {
  for (const auto& r : d.residuals)
    if (!r.pass()) err << "failed residual: " << r.name << " = " << num(r.value) << " > " << num(r.tolerance) << '\n';
}

int cmd_certify(std::optional<std::string> theta_text, ReportFormat format, bool timing, std::ostream& out,
                std::ostream& err) {
  ModuliParams at = ModuliParams::from_rational(Rational(1, 5));
  if (theta_text) {
    const Rational theta = parse_theta(*theta_text);
    require_build_range(theta);
    if (!(theta.to_double() < certified_theta_limit()))
      throw UsageError("theta = " + theta.str() + " is not below the certified threshold theta* = " +
                       num(certified_theta_limit()));
    at = ModuliParams::from_rational(theta);
  }
  const auto reports = certify::run_all(at);
  write_report(out, reports, format, timing);
  bool all = true;
  for (const auto& r : reports)
    if (!r.pass) {
      all = false;
      err << "claim failed: " << r.claim << '\n';
    }
  return all ? kExitPass : kExitClaimFailure;
}

int cmd_build(const std::string& theta_text, bool extended, const std::string& dir, int grid_n, bool timing,
              std::ostream& out, std::ostream& err) {
  const Rational theta = parse_theta(theta_text);
  require_build_range(theta);
  BuildOptions opt;
  opt.extended = extended;
  opt.grid_n = grid_n;
  Timer timer;
  const ProjectionResult r = [&] {
    try {
      return build_projection(ModuliParams::from_rational(theta), opt);
    } catch (const std::domain_error& e) {
      throw UsageError(e.what());
    }
  }();

  std::ostringstream diag;
  diag << "theta=" << theta.str() << '\n'
       << "alpha=" << num17(r.params.alpha()) << '\n'
       << "extended=" << flag(extended) << '\n'
       << "enclosure_floor=" << num(r.enclosure.floor) << " enclosure_ceiling=" << num(r.enclosure.ceiling) << '\n'
       << "inv_sqrt_residual=" << num(r.inv_sqrt_residual) << '\n'
       << "dperp_identity_residual=" << num(r.dperp_identity_residual) << '\n'
       << "box_m=" << r.support_m << " box_n=" << r.support_n << " nonzeros=" << r.e.nonzeros() << '\n';
  write_residuals(diag, r.diagnostics);

  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  save_coefficients((base / "P.coef").string(), r.P);
  save_coefficients((base / "a.coef").string(), r.a);
  save_coefficients((base / "e.coef").string(), r.e);
  {
    std::ofstream os(base / "diagnostics.txt");
    os << diag.str();
  }
  out << diag.str();
  if (timing) out << "runtime_s=" << num(timer.seconds()) << '\n';
  name_failures(err, r.diagnostics);
  return r.diagnostics.pass() ? kExitPass : kExitClaimFailure;
}

int cmd_verify(const std::string& path, std::optional<std::string> trace_text, bool fourier, int grid_n, bool timing,
               std::ostream& out, std::ostream& err) {
  TorusElement e = [&] {
    try {
      return load_coefficients(path);
    } catch (const FormatError& ex) {
      throw UsageError(path + ": " + ex.what());
    }
  }();
  VerifyOptions vo;
  vo.fourier = fourier;
  vo.grid_n = grid_n;
  if (trace_text) vo.expected_trace = parse_theta(*trace_text).to_double();
  Timer timer;
  const ProjectionDiagnostics d = verify_projection(e, vo);
  out << "file=" << path << '\n';
  write_residuals(out, d);
  if (timing) out << "runtime_s=" << num(timer.seconds()) << '\n';
  name_failures(err, d);
  return d.pass() ? kExitPass : kExitClaimFailure;
}

int cmd_sweep(const std::string& range, const std::string& path, std::ostream& out) {
  double a0 = 0.0, a1 = 0.0, step = 0.0;
  {
    std::string s = range;
    for (char& c : s)
      if (c == ':') c = ' ';
    std::istringstream is(s);
    std::string extra;
    if (!(is >> a0 >> a1 >> step) || (is >> extra)) throw UsageError("--alpha expects A:B:STEP, got '" + range + "'");
  }
  if (!(step > 0.0)) throw UsageError("sweep step must be positive");
  if (!(a0 > 0.0)) throw UsageError("alpha must be positive");
  std::ofstream os(path);
  if (!os) throw UsageError("cannot write " + path);
  os << "alpha,theta,B,neumann_gap\n";
  long rows = 0;
  if (a1 >= a0) {
    const long count = static_cast<long>(std::floor((a1 - a0) / step + 1e-9)) + 1;
    for (long i = 0; i < count; ++i) {
      const double alpha = a0 + static_cast<double>(i) * step;
      const ModuliParams p = ModuliParams::from_alpha(alpha);
      os << num17(alpha) << ',' << num17(p.theta()) << ',' << num17(certify::bound_B(alpha)) << ','
         << num17(certify::neumann_gap(p)) << '\n';
      ++rows;
    }
  }
  out << "rows=" << rows << " file=" << path << '\n';
  return kExitPass;
}

}  // namespace

void write_report(std::ostream& os, const std::vector<certify::CertReport>& reports, ReportFormat format,
                  bool timing) {
  if (format == ReportFormat::kv) {
    for (const auto& r : reports) {
      os << "claim=" << r.claim << " value=" << num(r.value) << " pass=" << flag(r.pass);
      if (r.reference) os << " reference=" << num(*r.reference) << " tol=" << num(r.tolerance);
      for (const auto& [k, v] : r.details) os << ' ' << k << '=' << num(v);
      if (timing) os << " runtime_s=" << num(r.runtime_s);
      os << '\n';
    }
    return;
  }
  std::size_t passed = 0;
  for (const auto& r : reports) {
    char head[160];
    std::snprintf(head, sizeof head, "%-14s %s  value %s", r.claim.c_str(), r.pass ? "PASS" : "FAIL",
                  num(r.value).c_str());
    os << head;
    if (r.reference) os << "  published " << num(*r.reference) << " +- " << num(r.tolerance);
    if (!r.parameters.empty()) os << "  [" << r.parameters << ']';
    if (timing) os << "  " << num(r.runtime_s) << " s";
    os << '\n';
    for (const auto& [k, v] : r.details) os << "    " << k << " = " << num(v) << '\n';
    passed += r.pass ? 1 : 0;
  }
  os << passed << " of " << reports.size() << " claims pass\n";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Projections in rotation algebras: certificates, construction, verification", "rotalg"};
  app.require_subcommand(1);
  bool timing = false;
  app.add_flag("--timing", timing, "Print runtimes");

  auto* certify_cmd = app.add_subcommand("certify", "Run every numerical certificate");
  std::string format = "text";
  std::optional<std::string> certify_theta;
  certify_cmd->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "kv"}));
  certify_cmd->add_option("--theta", certify_theta, "Run the theta-dependent checks here");

  auto* build_cmd = app.add_subcommand("build", "Construct and verify the projection");
  std::string build_theta;
  bool extended = false;
  std::string out_dir = ".";
  int grid_n = kDefaultGrid;
  build_cmd->add_option("--theta", build_theta, "theta as p/q")->required();
  build_cmd->add_flag("--extended", extended, "Admit theta up to 0.2427 via the refined Neumann sum");
  build_cmd->add_option("--out", out_dir, "Output directory");
  build_cmd->add_option("--grid", grid_n, "Matrix-bundle grid size")->check(CLI::PositiveNumber);

  auto* verify_cmd = app.add_subcommand("verify", "Re-run the projection checks on a coefficient file");
  std::string in_path;
  std::optional<std::string> verify_trace;
  bool fourier = false;
  verify_cmd->add_option("--in", in_path, "Coefficient file")->required();
  verify_cmd->add_option("--trace", verify_trace, "Expected trace");
  verify_cmd->add_flag("--fourier", fourier, "Also check e sigma(e) = 0 and sigma^2(e) = e");
  verify_cmd->add_option("--grid", grid_n, "Matrix-bundle grid size")->check(CLI::PositiveNumber);

  auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate B(alpha) and the refined Neumann sum");
  std::string range, sweep_out;
  sweep_cmd->add_option("--alpha", range, "A:B:STEP")->required();
  sweep_cmd->add_option("--out", sweep_out, "CSV output file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (certify_cmd->parsed())
      return cmd_certify(certify_theta, format == "kv" ? ReportFormat::kv : ReportFormat::text, timing, out, err);
    if (build_cmd->parsed()) return cmd_build(build_theta, extended, out_dir, grid_n, timing, out, err);
    if (verify_cmd->parsed()) return cmd_verify(in_path, verify_trace, fourier, grid_n, timing, out, err);
    if (sweep_cmd->parsed()) return cmd_sweep(range, sweep_out, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitClaimFailure;
  }
  return kExitUsage;
}

}  // namespace rotalg::cli
