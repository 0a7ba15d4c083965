#pragma once

// Hand-rolled random generators for property tests. Seeds are fixed so a
// failing case reproduces exactly.

#include <random>
#include <string>
#include <vector>

#include "flatlab/expr/parser.hpp"
#include "flatlab/expr/rational_expr.hpp"

namespace flatlab::testing {

inline expr::VarSetPtr test_vars() {
  static const expr::VarSetPtr vars = expr::VarSet::Builder()
                                          .symbols({"x", "y", "z", "u", "v", "w", "c"})
                                          .function("l", {"x", "z"}, 3)
                                          .function("F", {"x", "z"}, 3)
                                          .build();
  return vars;
}

class ExprGen {
 public:
  ExprGen(expr::VarSetPtr vars, std::vector<std::string> names, std::uint64_t seed)
      : vars_(std::move(vars)), names_(std::move(names)), rng_(seed) {}

  int small_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  expr::Polynomial polynomial(int max_terms = 4, int max_exp = 2) {
    expr::Polynomial p;
    int terms = small_int(1, max_terms);
    for (int t = 0; t < terms; ++t) {
      expr::Monomial m;
      for (const auto& n : names_) {
        int e = small_int(0, max_exp);
        if (small_int(0, 2) == 0) e = 0;
        m.set(vars_->id(n), static_cast<unsigned>(e));
      }
      int c = small_int(-5, 5);
      if (c == 0) c = 1;
      expr::BigRational coeff(c, small_int(1, 3));
      coeff.canonicalize();
      p += expr::Polynomial::monomial(m, coeff);
    }
    return p;
  }

  expr::Polynomial nonzero_polynomial(int max_terms = 4, int max_exp = 2) {
    for (;;) {
      auto p = polynomial(max_terms, max_exp);
      if (!p.is_zero()) return p;
    }
  }

  /// Random p/q with small polynomials.
  expr::RationalExpr rational() {
    auto n = polynomial();
    auto d = small_int(0, 2) == 0 ? expr::Polynomial(1L) : nonzero_polynomial(2, 2);
    return expr::RationalExpr::fraction(vars_, n, d);
  }

  expr::RationalExpr nonzero_rational() {
    for (;;) {
      auto r = rational();
      if (!r.is_zero()) return r;
    }
  }

  /// Point with coordinates in [0.5, 2] (keeps denominators away from zero
  /// for the generated families only with high probability; callers retry).
  expr::Point point() {
    std::uniform_real_distribution<double> d(0.5, 2.0);
    expr::Point p;
    for (const auto& n : names_) p[vars_->id(n)] = d(rng_);
    return p;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  expr::VarSetPtr vars_;
  std::vector<std::string> names_;
  std::mt19937_64 rng_;
};

}  // namespace flatlab::testing
