#include "flatlab/expr/rational_expr.hpp"

#include <bit>
#include <cmath>
#include <utility>

#include "flatlab/error.hpp"
#include "flatlab/expr/poly_gcd.hpp"

namespace flatlab::expr {

namespace {

Polynomial exact_div(const Polynomial& a, const Polynomial& b) {
  auto q = Polynomial::divide_exact(a, b);
  if (!q) throw Error("internal: inexact polynomial division");
  return *std::move(q);
}

}  // namespace

RationalExpr::RationalExpr(long c) : num_(c), den_(1L) { normalize_scale(); }

RationalExpr::RationalExpr(BigRational c, VarSetPtr vars)
    : vars_(std::move(vars)), num_(std::move(c)), den_(1L) {
  normalize_scale();
}

RationalExpr RationalExpr::variable(VarSetPtr vars, VarId v) {
  if (!vars || v >= vars->size()) throw UnknownVariable("variable id out of range");
  return raw(std::move(vars), Polynomial::variable(v), Polynomial(1L));
}

RationalExpr RationalExpr::variable(VarSetPtr vars, std::string_view name) {
  if (!vars) throw UnknownVariable("no variable set for '" + std::string(name) + "'");
  VarId id = vars->id(name);
  return variable(std::move(vars), id);
}

RationalExpr RationalExpr::raw(VarSetPtr vars, Polynomial num, Polynomial den) {
  RationalExpr r;
  r.vars_ = std::move(vars);
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  return r;
}

RationalExpr RationalExpr::fraction(VarSetPtr vars, Polynomial num, Polynomial den) {
  if (den.is_zero()) throw DivisionByZero("division by zero expression");
  RationalExpr r = raw(std::move(vars), std::move(num), std::move(den));
  if (r.num_.is_zero()) {
    r.den_ = Polynomial(1L);
    return r;
  }
  if (!r.den_.is_constant()) {
    Polynomial g = gcd(r.num_, r.den_, r.cap());
    if (!g.is_constant()) {
      r.num_ = exact_div(r.num_, g);
      r.den_ = exact_div(r.den_, g);
    }
  }
  r.normalize_scale();
  return r;
}

unsigned RationalExpr::cap() const {
  return vars_ ? vars_->gcd_degree_cap() : kDefaultGcdDegreeCap;
}

void RationalExpr::normalize_scale() {
  if (num_.is_zero()) {
    den_ = Polynomial(1L);
    return;
  }
  BigRational cn = num_.content();
  BigRational cd = den_.content();
  if (sgn(den_.leading().coeff) < 0) cd = -cd;
  BigRational ratio = cn / cd;
  if (cn == 1 && cd == 1) return;
  num_ *= BigRational(ratio.get_num() / cn);
  den_ *= BigRational(ratio.get_den() / cd);
}

VarSetPtr RationalExpr::common(const RationalExpr& a, const RationalExpr& b) {
  if (!a.vars_) return b.vars_;
  if (!b.vars_ || a.vars_ == b.vars_) return a.vars_;
  throw Error("expressions belong to different variable sets");
}

BigRational RationalExpr::constant_value() const {
  if (!is_constant()) throw Error("expression is not constant: " + to_string());
  return num_.constant_value() / den_.constant_value();
}

RationalExpr RationalExpr::operator-() const { return raw(vars_, -num_, den_); }

RationalExpr operator+(const RationalExpr& a, const RationalExpr& b) {
  VarSetPtr vars = RationalExpr::common(a, b);
  if (a.is_zero()) return RationalExpr::raw(vars, b.num_, b.den_);
  if (b.is_zero()) return RationalExpr::raw(vars, a.num_, a.den_);
  if (a.den_ == b.den_) return RationalExpr::fraction(vars, a.num_ + b.num_, a.den_);
  const unsigned cap = vars ? vars->gcd_degree_cap() : kDefaultGcdDegreeCap;
  // Henrici: only the common part of the denominators can cancel.
  Polynomial g = (a.den_.is_constant() || b.den_.is_constant()) ? Polynomial(1L)
                                                                 : gcd(a.den_, b.den_, cap);
  RationalExpr r;
  if (g.is_constant()) {
    r = RationalExpr::raw(vars, a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  } else {
    Polynomial ad = exact_div(a.den_, g), bd = exact_div(b.den_, g);
    Polynomial t = a.num_ * bd + b.num_ * ad;
    if (t.is_zero()) return RationalExpr(BigRational(0), vars);
    Polynomial h = gcd(t, g, cap);
    if (h.is_constant()) {
      r = RationalExpr::raw(vars, std::move(t), ad * b.den_);
    } else {
      r = RationalExpr::raw(vars, exact_div(t, h), ad * bd * exact_div(g, h));
    }
  }
  r.normalize_scale();
  return r;
}

RationalExpr operator-(const RationalExpr& a, const RationalExpr& b) { return a + (-b); }

RationalExpr operator*(const RationalExpr& a, const RationalExpr& b) {
  VarSetPtr vars = RationalExpr::common(a, b);
  if (a.is_zero() || b.is_zero()) return RationalExpr(BigRational(0), vars);
  const unsigned cap = vars ? vars->gcd_degree_cap() : kDefaultGcdDegreeCap;
  auto cancel = [cap](const Polynomial& n, const Polynomial& d) {
    if (n.is_constant() || d.is_constant()) return std::pair{n, d};
    Polynomial g = gcd(n, d, cap);
    if (g.is_constant()) return std::pair{n, d};
    return std::pair{exact_div(n, g), exact_div(d, g)};
  };
  auto [an, bd] = cancel(a.num_, b.den_);
  auto [bn, ad] = cancel(b.num_, a.den_);
  RationalExpr r = RationalExpr::raw(vars, an * bn, ad * bd);
  r.normalize_scale();
  return r;
}

RationalExpr operator/(const RationalExpr& a, const RationalExpr& b) {
  if (b.is_zero()) throw DivisionByZero("division by zero expression");
  RationalExpr inv = RationalExpr::raw(b.vars_, b.den_, b.num_);
  inv.normalize_scale();
  return a * inv;
}

RationalExpr RationalExpr::pow(int e) const {
  if (e < 0) return RationalExpr(BigRational(1), vars_) / pow(-e);
  RationalExpr r = raw(vars_, num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
  r.normalize_scale();
  return r;
}

bool operator==(const RationalExpr& a, const RationalExpr& b) {
  RationalExpr::common(a, b);
  if (a.den_ == b.den_) return a.num_ == b.num_;
  return a.num_ * b.den_ == b.num_ * a.den_;
}

std::string RationalExpr::to_string() const {
  auto print = [this](const Polynomial& p) {
    if (vars_) return p.to_string(*vars_);
    if (!p.is_constant()) throw Error("internal: symbolic expression without variables");
    return p.constant_value().get_str();
  };
  std::string n = print(num_);
  if (den_.is_one()) return n;
  if (num_.size() > 1) n = "(" + n + ")";
  std::string d = print(den_);
  const bool bare = den_.is_constant() ||
                    (den_.is_monomial() && den_.leading().coeff == 1 &&
                     std::popcount(den_.leading().mono.support()) == 1);
  return n + "/" + (bare ? d : "(" + d + ")");
}

bool is_zero(const RationalExpr& a) { return a.is_zero(); }

namespace {

// d/dv of a polynomial, chaining through jets that depend on v.
Polynomial total_partial(const Polynomial& p, VarId v, const VarSet& vars) {
  Polynomial out = p.partial(v);
  if (vars.is_jet(v)) return out;
  for (std::uint32_t s = p.support(); s; s &= s - 1) {
    auto j = static_cast<VarId>(std::countr_zero(s));
    if (j == v || !vars.is_jet(j) || !vars.depends_on(j, v)) continue;
    out += p.partial(j) * Polynomial::variable(vars.jet_derivative(j, v));
  }
  return out;
}

}  // namespace

RationalExpr diff(const RationalExpr& a, VarId v) {
  if (!a.vars()) return RationalExpr(BigRational(0));
  if (v >= a.vars()->size()) throw UnknownVariable("variable id out of range");
  const VarSet& vars = *a.vars();
  Polynomial dn = total_partial(a.num(), v, vars);
  if (a.den().is_constant()) return RationalExpr::fraction(a.vars(), std::move(dn), a.den());
  Polynomial dd = total_partial(a.den(), v, vars);
  if (dd.is_zero()) return RationalExpr::fraction(a.vars(), std::move(dn), a.den());
  // (n/d)' = (n' d - n d') / d^2; cancel gcd(d, d') first to keep sizes down.
  Polynomial g = gcd(a.den(), dd, vars.gcd_degree_cap());
  Polynomial dr = exact_div(a.den(), g);
  Polynomial ddr = exact_div(dd, g);
  return RationalExpr::fraction(a.vars(), dn * dr - a.num() * ddr, dr * a.den());
}

RationalExpr diff(const RationalExpr& a, std::string_view v) {
  if (!a.vars()) throw UnknownVariable("unknown variable '" + std::string(v) + "'");
  return diff(a, a.vars()->id(v));
}

RationalExpr diff(const RationalExpr& a, VarId v, unsigned times) {
  RationalExpr r = a;
  for (unsigned k = 0; k < times; ++k) r = diff(r, v);
  return r;
}

namespace {

struct SubstitutedPoly {
  Polynomial num;
  Polynomial den;
};

// p with each variable v replaced by n_v/d_v, as one fraction over
// prod d_v^deg_v(p).
SubstitutedPoly substitute_poly(const Polynomial& p, const std::map<VarId, RationalExpr>& b) {
  std::map<VarId, unsigned> degs;
  for (const auto& [v, e] : b)
    if (p.depends_on(v)) degs[v] = p.degree(v);
  if (degs.empty()) return {p, Polynomial(1L)};

  std::map<std::pair<VarId, unsigned>, Polynomial> cache;
  auto power = [&](VarId v, bool numerator, unsigned e) -> const Polynomial& {
    auto key = std::pair{v, e * 2u + (numerator ? 1u : 0u)};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const RationalExpr& r = b.at(v);
    return cache.emplace(key, (numerator ? r.num() : r.den()).pow(e)).first->second;
  };

  Polynomial num;
  std::vector<Term> rest;
  for (const auto& t : p.terms()) {
    Monomial kept = t.mono;
    Polynomial term = Polynomial::monomial(Monomial{}, t.coeff);
    for (const auto& [v, dv] : degs) {
      unsigned e = t.mono[v];
      kept.set(v, 0);
      if (e) term = term * power(v, true, e);
      if (dv > e) term = term * power(v, false, dv - e);
    }
    num += term.mul_monomial(kept);
  }
  Polynomial den(1L);
  for (const auto& [v, dv] : degs) den = den * power(v, false, dv);
  return {std::move(num), std::move(den)};
}

}  // namespace

RationalExpr substitute(const RationalExpr& a, const Bindings& bindings) {
  if (bindings.empty() || !a.vars()) return a;
  const VarSetPtr& vs = a.vars();
  const VarSet& vars = *vs;
  Bindings full;
  for (const auto& [v, e] : bindings) {
    if (v >= vars.size()) throw UnknownVariable("variable id out of range");
    full.emplace(v, RationalExpr::fraction(vs, e.num(), e.den()));
  }
  // Extend base-function bindings to the derivative jets that occur.
  for (std::uint32_t s = a.support(); s; s &= s - 1) {
    auto j = static_cast<VarId>(std::countr_zero(s));
    if (!vars.is_jet(j) || full.count(j)) continue;
    const Variable& jet = vars[j];
    auto base = vars.jet(jet.function, std::vector<unsigned>(jet.orders.size(), 0));
    if (!base || !bindings.count(*base)) continue;
    RationalExpr d = bindings.at(*base);
    for (std::size_t k = 0; k < jet.args.size(); ++k) d = diff(d, jet.args[k], jet.orders[k]);
    full.emplace(j, std::move(d));
  }
  SubstitutedPoly n = substitute_poly(a.num(), full);
  SubstitutedPoly d = substitute_poly(a.den(), full);
  if (d.num.is_zero())
    throw DivisionByZero("substitution makes the denominator vanish identically");
  RationalExpr top = RationalExpr::fraction(vs, std::move(n.num), std::move(n.den));
  RationalExpr bottom = RationalExpr::fraction(vs, std::move(d.num), std::move(d.den));
  return top / bottom;
}

RationalExpr substitute(const RationalExpr& a,
                        const std::map<std::string, RationalExpr>& bindings) {
  if (!a.vars()) return a;
  Bindings ids;
  for (const auto& [name, e] : bindings) ids.emplace(a.vars()->id(name), e);
  return substitute(a, ids);
}

namespace {

double eval_poly(const Polynomial& p, const Point& point, const VarSet* vars) {
  double sum = 0.0;
  for (const auto& t : p.terms()) {
    double term = t.coeff.get_d();
    for (std::uint32_t s = t.mono.support(); s; s &= s - 1) {
      auto v = static_cast<VarId>(std::countr_zero(s));
      auto it = point.find(v);
      if (it == point.end())
        throw UnknownVariable("no value for '" + (vars ? vars->name(v) : std::to_string(v)) + "'");
      term *= std::pow(it->second, static_cast<int>(t.mono[v]));
    }
    sum += term;
  }
  return sum;
}

}  // namespace

double eval_numeric(const RationalExpr& a, const Point& point, double den_epsilon) {
  const VarSet* vars = a.vars().get();
  double d = eval_poly(a.den(), point, vars);
  if (std::abs(d) <= den_epsilon) throw NearSingular("denominator vanishes at evaluation point");
  return eval_poly(a.num(), point, vars) / d;
}

double eval_numeric(const RationalExpr& a, const std::map<std::string, double>& point,
                    double den_epsilon) {
  Point ids;
  if (a.vars())
    for (const auto& [name, value] : point)
      if (auto id = a.vars()->find(name)) ids.emplace(*id, value);
  return eval_numeric(a, ids, den_epsilon);
}

}  // namespace flatlab::expr
