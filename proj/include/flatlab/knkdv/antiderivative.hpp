#pragma once

#include "flatlab/expr/rational_expr.hpp"

namespace flatlab::knkdv {

/// Rational antiderivative of f with respect to v, treating every other
/// variable as a constant. Uses Hermite reduction in the Horowitz-Ostrogradsky
/// form; the integration constant is 0. Throws IntegrationError when the
/// antiderivative has a logarithmic part (and so is not rational).
expr::RationalExpr antiderivative(const expr::RationalExpr& f, expr::VarId v);

}  // namespace flatlab::knkdv
