#pragma once

#include <string_view>

#include "flatlab/expr/rational_expr.hpp"

namespace flatlab::expr {

/// Parses
///
///   expr   := term (('+' | '-') term)*
///   term   := factor (('*' | '/') factor)*
///   factor := ('+' | '-') factor | base ('^' nonneg-integer)?
///   base   := integer | identifier | '(' expr ')'
///
/// A rational literal p/q is an integer division. Identifiers must be
/// declared in `vars`; whitespace is insignificant. Throws ParseError with
/// the byte offset of the offending token, including for division by an
/// expression that is identically zero.
RationalExpr parse(std::string_view text, const VarSetPtr& vars);

}  // namespace flatlab::expr
