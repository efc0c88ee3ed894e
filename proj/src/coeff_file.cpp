#include "rotalg/coeff_file.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <vector>

#include "rotalg/errors.hpp"

namespace rotalg {

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s, int line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw FormatError("line " + std::to_string(line) + ": bad number '" + s + "'");
  return v;
}

long long parse_int(const std::string& s, int line) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw FormatError("line " + std::to_string(line) + ": bad integer '" + s + "'");
  return v;
}

}  // namespace

void write_coefficients(std::ostream& os, const TorusElement& a) {
  const auto& r = a.commutation().rational();
  if (!r) throw UnsupportedDomain("coefficient files need a rational vartheta");
  os << "format_version=" << kCoeffFormatVersion << '\n'
     << "vartheta=" << r->str() << '\n'
     << "support=" << a.support_radius() << '\n'
     << "tail_bound=" << fmt17(a.dropped_mass()) << '\n'
     << "count=" << a.nonzeros() << '\n'
     << "end_header\n";
  a.for_each([&](int m, int n, const cplx& c) {
    os << m << ' ' << n << ' ' << fmt17(c.real()) << ' ' << fmt17(c.imag()) << '\n';
  });
}

TorusElement read_coefficients(std::istream& is) {
  static const std::set<std::string> known{"format_version", "vartheta", "support", "tail_bound", "count"};
  std::map<std::string, std::string> header;
  std::string line;
  int lineno = 0;
  bool ended = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (line == "end_header") {
      ended = true;
      break;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw FormatError("line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = line.substr(0, eq);
    if (!known.count(key)) throw FormatError("line " + std::to_string(lineno) + ": unknown header key '" + key + "'");
    if (!header.emplace(key, line.substr(eq + 1)).second)
      throw FormatError("line " + std::to_string(lineno) + ": duplicate header key '" + key + "'");
  }
  if (!ended) throw FormatError("missing end_header");
  for (const auto& k : known)
    if (!header.count(k)) throw FormatError("missing header key '" + k + "'");
  if (parse_int(header["format_version"], 1) != kCoeffFormatVersion)
    throw FormatError("unsupported format_version " + header["format_version"]);

  Rational vartheta;
  try {
    vartheta = Rational::parse(header["vartheta"]);
  } catch (const std::exception& e) {
    throw FormatError(std::string("bad vartheta: ") + e.what());
  }
  const long long support = parse_int(header["support"], 0);
  const double tail = parse_double(header["tail_bound"], 0);
  const long long count = parse_int(header["count"], 0);
  if (support < 0 || count < 0 || !(tail >= 0.0)) throw FormatError("negative header value");

  TorusElement a(Commutation::exact(vartheta));
  long long seen = 0;
  std::set<std::pair<long long, long long>> keys;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string sm, sn, sre, sim, extra;
    if (!(ls >> sm >> sn >> sre >> sim) || (ls >> extra))
      throw FormatError("line " + std::to_string(lineno) + ": expected 'm n re im'");
    const long long m = parse_int(sm, lineno), n = parse_int(sn, lineno);
    if (std::max(std::llabs(m), std::llabs(n)) > support)
      throw FormatError("line " + std::to_string(lineno) + ": index outside the declared support");
    if (!keys.emplace(m, n).second) throw FormatError("line " + std::to_string(lineno) + ": repeated index");
    a.set(static_cast<int>(m), static_cast<int>(n), {parse_double(sre, lineno), parse_double(sim, lineno)});
    ++seen;
  }
  if (seen != count)
    throw FormatError("header declares " + std::to_string(count) + " records, found " + std::to_string(seen));
  a.add_dropped_mass(tail);
  return a;
}

void save_coefficients(const std::string& path, const TorusElement& a) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  write_coefficients(os, a);
  if (!os) throw std::runtime_error("write failed for " + path);
}

TorusElement load_coefficients(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open " + path);
  return read_coefficients(is);
}

}  // namespace rotalg
