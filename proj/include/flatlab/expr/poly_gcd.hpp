#pragma once

#include "flatlab/expr/polynomial.hpp"

namespace flatlab::expr {

/// Greatest common divisor over Q[vars], normalized with primitive_integer
/// (coprime integer coefficients, positive leading coefficient).
///
/// Works recursively in a main variable with subresultant pseudo-remainder
/// sequences. A subproblem whose degree in its main variable exceeds
/// `degree_cap` is not reduced; the result is then a common divisor that
/// may not be the greatest one.
Polynomial gcd(const Polynomial& a, const Polynomial& b,
               unsigned degree_cap = kDefaultGcdDegreeCap);

}  // namespace flatlab::expr
