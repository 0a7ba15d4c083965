#pragma once

// Christoffel symbols of the 3D metric as printed for a symbolic l(x, z),
// transcribed into the parser's syntax. Indices are 1-based as printed.

#include <array>
#include <vector>

namespace flatlab::testing {

struct PrintedSymbol {
  std::array<int, 3> kij;
  const char* expr;
};

inline const std::vector<PrintedSymbol>& printed_christoffel() {
  static const std::vector<PrintedSymbol> list{
      {{1, 1, 1}, "(2*l*y^2 - 1)/(2*y)"},
      {{2, 1, 1}, "-(4*y^3*l_x - 8*l*y^2 + 1)/(4*y)"},
      {{3, 1, 1}, "-y"},
      {{1, 1, 2}, "1/y"},
      {{2, 1, 2}, "1/(2*y)"},
      {{1, 1, 3}, "(2*l*y^2 - 1)*l/(2*y)"},
      {{2, 1, 3}, "-(4*y^3*l*l_x - 8*y^2*l^2 + l + 4*y^2*l_xx - 2*y*l_x)/(4*y)"},
      {{3, 1, 3}, "-l*y"},
      {{1, 2, 3}, "l/y"},
      {{2, 2, 3}, "-(2*y*l_x - l)/(2*y)"},
      {{1, 3, 3}, "-(-2*l_z*y + 4*y*l*l_x - 2*l_xx - 2*l^3*y^2 + l^2)/(2*y)"},
      {{2, 3, 3},
       "(-4*l^2*y^3*l_x - 4*l*y^2*l_xx + 4*l_z*y + 2*l_xx + 8*y^2*l_x^2 + 8*l^3*y^2"
       " - 8*y*l*l_x - l^2 - 4*y^2*l_xz)/(4*y)"},
      {{3, 3, 3}, "-l^2*y + l_x"},
  };
  return list;
}

}  // namespace flatlab::testing
