#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rotalg/certify.hpp"

namespace rotalg::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitClaimFailure = 1;
inline constexpr int kExitUsage = 2;

enum class ReportFormat { text, kv };

// One block (text) or one line (kv) per report. Runtimes only with timing set,
// so identical runs give identical bytes.
void write_report(std::ostream& os, const std::vector<certify::CertReport>& reports, ReportFormat format,
                  bool timing = false);

// Entry point behind the executable; args exclude the program name.
//   certify [--format text|kv] [--theta p/q]
//   build --theta p/q [--extended] [--out DIR] [--grid N]
//   verify --in FILE [--trace T] [--fourier] [--grid N]
//   sweep --alpha A:B:STEP --out FILE
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rotalg::cli
