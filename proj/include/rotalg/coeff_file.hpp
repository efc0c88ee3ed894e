#pragma once

#include <iosfwd>
#include <string>

#include "rotalg/torus.hpp"

// Plain-text coefficient dumps:
//
//   format_version=1
//   vartheta=p/q
//   support=<largest |m| or |n|>
//   tail_bound=<dropped l1 mass>
//   count=<records>
//   end_header
//   m n re im            (one line per nonzero coefficient, ascending (m, n))
//
// Floats carry 17 significant digits, so read(write(x)) == x exactly.
namespace rotalg {

inline constexpr int kCoeffFormatVersion = 1;

void write_coefficients(std::ostream& os, const TorusElement& a);
TorusElement read_coefficients(std::istream& is);

void save_coefficients(const std::string& path, const TorusElement& a);
TorusElement load_coefficients(const std::string& path);

}  // namespace rotalg
