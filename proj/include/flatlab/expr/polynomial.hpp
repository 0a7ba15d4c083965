#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flatlab/expr/monomial.hpp"
#include "flatlab/expr/var_set.hpp"

namespace flatlab::expr {

using BigInt = mpz_class;
/// GMP keeps mpq values canonical: positive denominator, coprime parts, 0/1.
using BigRational = mpq_class;

struct Term {
  Monomial mono;
  BigRational coeff;
};

/// Sparse multivariate polynomial over Q. Terms are kept strictly descending
/// in graded-lex order with no zero coefficients, so structural equality is
/// polynomial equality.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(BigRational c);
  explicit Polynomial(long c) : Polynomial(BigRational(c)) {}

  static Polynomial variable(VarId v, unsigned exponent = 1);
  static Polynomial monomial(Monomial m, BigRational c);
  /// Accepts terms in any order; combines duplicates and drops zeros.
  static Polynomial from_terms(std::vector<Term> terms);

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  bool is_one() const;
  /// Constant term value; requires is_constant().
  BigRational constant_value() const;

  std::size_t size() const noexcept { return terms_.size(); }
  std::span<const Term> terms() const noexcept { return terms_; }
  const Term& leading() const { return terms_.front(); }

  unsigned degree(VarId v) const;
  unsigned total_degree() const;
  std::uint32_t support() const;
  bool depends_on(VarId v) const { return (support() >> v) & 1u; }
  /// Greatest monomial dividing every term.
  Monomial monomial_content() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const BigRational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const BigRational& c) { return a *= c; }
  Polynomial mul_monomial(const Monomial& m) const;
  /// Precondition: m divides every term.
  Polynomial div_monomial(const Monomial& m) const;
  Polynomial pow(unsigned e) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  /// Partial derivative treating every variable as independent.
  Polynomial partial(VarId v) const;

  /// Coefficients in `v`: result[k] multiplies v^k and is free of v.
  std::vector<Polynomial> coefficients_in(VarId v) const;
  static Polynomial from_coefficients(VarId v, std::span<const Polynomial> coeffs);

  /// Exact quotient a / b, or nullopt if b does not divide a.
  static std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);

  /// Positive rational c such that (*this / c) has coprime integer
  /// coefficients. Zero for the zero polynomial.
  BigRational content() const;

  std::string to_string(const VarSet& vars) const;

 private:
  std::vector<Term> terms_;
};

/// Scales p by a rational so the coefficients are coprime integers and the
/// leading coefficient is positive.
Polynomial primitive_integer(const Polynomial& p);

}  // namespace flatlab::expr
