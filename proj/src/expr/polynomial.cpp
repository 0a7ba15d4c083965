#include "flatlab/expr/polynomial.hpp"

#include <algorithm>
#include <unordered_map>

namespace flatlab::expr {

namespace {

bool term_greater(const Term& a, const Term& b) { return a.mono > b.mono; }

// Merge two descending term lists, combining like terms. `sign` is +1 or -1
// and scales the second list.
std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, int sign) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    auto c = a[i].mono <=> b[j].mono;
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
      if (sign < 0) out.back().coeff = -out.back().coeff;
    } else {
      BigRational s = sign > 0 ? BigRational(a[i].coeff + b[j].coeff)
                               : BigRational(a[i].coeff - b[j].coeff);
      if (sgn(s) != 0) out.push_back({a[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) {
    out.push_back(b[j]);
    if (sign < 0) out.back().coeff = -out.back().coeff;
  }
  return out;
}

}  // namespace

Polynomial::Polynomial(BigRational c) {
  if (sgn(c) != 0) terms_.push_back({Monomial{}, std::move(c)});
}

Polynomial Polynomial::variable(VarId v, unsigned exponent) {
  return monomial(Monomial::variable(v, exponent), BigRational(1));
}

Polynomial Polynomial::monomial(Monomial m, BigRational c) {
  Polynomial p;
  if (sgn(c) != 0) p.terms_.push_back({std::move(m), std::move(c)});
  return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  Polynomial p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && sgn(p.terms_.back().coeff) == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && sgn(p.terms_.back().coeff) == 0) p.terms_.pop_back();
  return p;
}

bool Polynomial::is_one() const {
  return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff == 1;
}

BigRational Polynomial::constant_value() const {
  if (terms_.empty()) return BigRational(0);
  if (!is_constant()) throw Error("polynomial is not constant");
  return terms_[0].coeff;
}

unsigned Polynomial::degree(VarId v) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono[v]);
  return d;
}

unsigned Polynomial::total_degree() const {
  return terms_.empty() ? 0 : terms_.front().mono.degree();
}

std::uint32_t Polynomial::support() const {
  std::uint32_t s = 0;
  for (const auto& t : terms_) s |= t.mono.support();
  return s;
}

Monomial Polynomial::monomial_content() const {
  if (terms_.empty()) return Monomial{};
  Monomial g = terms_[0].mono;
  for (std::size_t i = 1; i < terms_.size() && !g.is_one(); ++i)
    g = Monomial::gcd(g, terms_[i].mono);
  return g;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  terms_ = merge(terms_, o.terms_, +1);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge(terms_, o.terms_, -1);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial& Polynomial::operator*=(const BigRational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.coeff *= c;
  }
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.size() == 1) return b.mul_monomial(a.terms_[0].mono) * a.terms_[0].coeff;
  if (b.size() == 1) return a.mul_monomial(b.terms_[0].mono) * b.terms_[0].coeff;
  std::unordered_map<Monomial, BigRational, MonomialHash> acc;
  acc.reserve(a.size() * b.size());
  BigRational prod;
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      mpq_mul(prod.get_mpq_t(), ta.coeff.get_mpq_t(), tb.coeff.get_mpq_t());
      auto [it, inserted] = acc.try_emplace(ta.mono * tb.mono);
      if (inserted) {
        it->second = prod;
      } else {
        mpq_add(it->second.get_mpq_t(), it->second.get_mpq_t(), prod.get_mpq_t());
      }
    }
  }
  Polynomial r;
  r.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (sgn(c) != 0) r.terms_.push_back({m, std::move(c)});
  std::sort(r.terms_.begin(), r.terms_.end(), term_greater);
  return r;
}

Polynomial Polynomial::mul_monomial(const Monomial& m) const {
  Polynomial r = *this;
  if (m.is_one()) return r;
  for (auto& t : r.terms_) t.mono *= m;
  return r;
}

Polynomial Polynomial::div_monomial(const Monomial& m) const {
  Polynomial r = *this;
  if (m.is_one()) return r;
  for (auto& t : r.terms_) t.mono = t.mono / m;
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(1L), base = *this;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff)
      return false;
  return true;
}

Polynomial Polynomial::partial(VarId v) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    unsigned e = t.mono[v];
    if (e == 0) continue;
    Monomial m = t.mono;
    m.set(v, e - 1);
    out.push_back({m, t.coeff * e});
  }
  // Dividing every surviving term by v keeps the order.
  Polynomial r;
  r.terms_ = std::move(out);
  return r;
}

std::vector<Polynomial> Polynomial::coefficients_in(VarId v) const {
  std::vector<std::vector<Term>> buckets(degree(v) + 1);
  for (const auto& t : terms_) {
    Monomial m = t.mono;
    unsigned e = m[v];
    m.set(v, 0);
    buckets[e].push_back({m, t.coeff});
  }
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
  return out;
}

Polynomial Polynomial::from_coefficients(VarId v, std::span<const Polynomial> coeffs) {
  std::vector<Term> out;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    for (const auto& t : coeffs[k].terms_) {
      Monomial m = t.mono;
      m.set(v, m[v] + static_cast<unsigned>(k));
      out.push_back({m, t.coeff});
    }
  return from_terms(std::move(out));
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (a.is_zero()) return Polynomial{};
  if (b.size() == 1) {
    const auto& lb = b.terms_[0];
    Polynomial q;
    q.terms_.reserve(a.size());
    BigRational inv = 1 / lb.coeff;
    for (const auto& t : a.terms_) {
      if (!lb.mono.divides(t.mono)) return std::nullopt;
      q.terms_.push_back({t.mono / lb.mono, t.coeff * inv});
    }
    return q;
  }
  // Cheap necessary conditions before long division.
  if ((b.support() & ~a.support()) != 0) return std::nullopt;
  for (std::size_t v = 0; v < kMaxVars; ++v)
    if (b.degree(static_cast<VarId>(v)) > a.degree(static_cast<VarId>(v))) return std::nullopt;

  const Term& lb = b.terms_.front();
  BigRational inv = 1 / lb.coeff;
  Polynomial rem = a;
  std::vector<Term> quot;
  while (!rem.is_zero()) {
    const Term& lr = rem.terms_.front();
    if (!lb.mono.divides(lr.mono)) return std::nullopt;
    Term q{lr.mono / lb.mono, lr.coeff * inv};
    rem -= b.mul_monomial(q.mono) * q.coeff;
    quot.push_back(std::move(q));
  }
  Polynomial out;
  out.terms_ = std::move(quot);  // produced in descending order
  return out;
}

BigRational Polynomial::content() const {
  if (terms_.empty()) return BigRational(0);
  BigInt num_gcd = 0, den_lcm = 1;
  for (const auto& t : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  BigRational c(num_gcd, den_lcm);
  c.canonicalize();
  return c;
}

Polynomial primitive_integer(const Polynomial& p) {
  if (p.is_zero()) return p;
  BigRational c = p.content();
  if (sgn(p.leading().coeff) < 0) c = -c;
  if (c == 1) return p;
  return p * BigRational(1 / c);
}

std::string Polynomial::to_string(const VarSet& vars) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    BigRational mag = abs(t.coeff);
    bool negative = sgn(t.coeff) < 0;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t v = 0; v < vars.size(); ++v) {
      unsigned e = t.mono[static_cast<VarId>(v)];
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars.name(static_cast<VarId>(v));
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + "*" + mono;
    }
  }
  return out;
}

}  // namespace flatlab::expr
