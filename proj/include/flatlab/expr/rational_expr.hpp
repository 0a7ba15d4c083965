#pragma once

#include <map>
#include <string>
#include <string_view>

#include "flatlab/expr/polynomial.hpp"
#include "flatlab/expr/var_set.hpp"

namespace flatlab::expr {

/// Exact multivariate rational function num/den.
///
/// Canonical form: num and den have integer coefficients with no common
/// integer factor, den has a positive leading coefficient, and the common
/// polynomial factor found by gcd() has been cancelled. Zero is 0/1.
///
/// Expressions carry the VarSet they were built over. Pure constants may
/// carry none and adopt the VarSet of whatever they are combined with.
class RationalExpr {
 public:
  RationalExpr() : den_(1L) {}
  RationalExpr(long c);  // NOLINT(google-explicit-constructor)
  RationalExpr(BigRational c, VarSetPtr vars = nullptr);

  static RationalExpr variable(VarSetPtr vars, VarId v);
  static RationalExpr variable(VarSetPtr vars, std::string_view name);
  /// Builds num/den and brings it to canonical form.
  static RationalExpr fraction(VarSetPtr vars, Polynomial num, Polynomial den);

  const Polynomial& num() const noexcept { return num_; }
  const Polynomial& den() const noexcept { return den_; }
  const VarSetPtr& vars() const noexcept { return vars_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }
  /// Requires is_constant().
  BigRational constant_value() const;
  std::uint32_t support() const { return num_.support() | den_.support(); }
  bool depends_on(VarId v) const { return (support() >> v) & 1u; }

  RationalExpr operator-() const;
  RationalExpr& operator+=(const RationalExpr& o) { return *this = *this + o; }
  RationalExpr& operator-=(const RationalExpr& o) { return *this = *this - o; }
  RationalExpr& operator*=(const RationalExpr& o) { return *this = *this * o; }
  RationalExpr& operator/=(const RationalExpr& o) { return *this = *this / o; }
  friend RationalExpr operator+(const RationalExpr& a, const RationalExpr& b);
  friend RationalExpr operator-(const RationalExpr& a, const RationalExpr& b);
  friend RationalExpr operator*(const RationalExpr& a, const RationalExpr& b);
  /// Throws DivisionByZero if b is zero.
  friend RationalExpr operator/(const RationalExpr& a, const RationalExpr& b);
  RationalExpr pow(int e) const;

  /// Mathematical equality, decided by cross-multiplication so that it also
  /// holds when a degree cap left a fraction partially reduced.
  friend bool operator==(const RationalExpr& a, const RationalExpr& b);
  /// Structural identity of the stored canonical pair.
  bool identical(const RationalExpr& o) const { return num_ == o.num_ && den_ == o.den_; }

  /// Prints in the parser's grammar, terms in graded-lex order.
  std::string to_string() const;

 private:
  VarSetPtr vars_;
  Polynomial num_;
  Polynomial den_;

  unsigned cap() const;
  static VarSetPtr common(const RationalExpr& a, const RationalExpr& b);
  static RationalExpr raw(VarSetPtr vars, Polynomial num, Polynomial den);
  void normalize_scale();
};

bool is_zero(const RationalExpr& a);

/// Partial derivative in symbol `v`. Jets of functions depending on `v` are
/// chained: d/dx l(x, z) = l_x.
RationalExpr diff(const RationalExpr& a, VarId v);
RationalExpr diff(const RationalExpr& a, std::string_view v);
RationalExpr diff(const RationalExpr& a, VarId v, unsigned times);

using Bindings = std::map<VarId, RationalExpr>;

/// Simultaneous substitution. Binding a function's base jet (e.g. `l`) also
/// binds its derivative jets (`l_x`, `l_xz`, ...) to the matching
/// derivatives of the bound expression, unless they are bound explicitly.
/// Throws DivisionByZero if the resulting denominator vanishes identically.
RationalExpr substitute(const RationalExpr& a, const Bindings& bindings);
RationalExpr substitute(const RationalExpr& a,
                        const std::map<std::string, RationalExpr>& bindings);

using Point = std::map<VarId, double>;

/// Floating evaluation. Throws NearSingular if |den(point)| <= den_epsilon
/// and UnknownVariable if the point lacks a needed variable.
double eval_numeric(const RationalExpr& a, const Point& point, double den_epsilon = 1e-300);
double eval_numeric(const RationalExpr& a, const std::map<std::string, double>& point,
                    double den_epsilon = 1e-300);

}  // namespace flatlab::expr
