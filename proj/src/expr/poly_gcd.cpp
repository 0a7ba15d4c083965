#include "flatlab/expr/poly_gcd.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <vector>

namespace flatlab::expr {

namespace {

// Dense coefficient vector in a main variable; index = power. Kept trimmed:
// empty means zero, otherwise back() is nonzero.
using Upoly = std::vector<Polynomial>;

__extension__ using Wide = unsigned __int128;

constexpr std::uint64_t kPrime = 2305843009213693951ull;  // 2^61 - 1

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<Wide>(a) * b) % kPrime);
}

std::uint64_t pow_mod(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1u) r = mul_mod(r, b);
    b = mul_mod(b, b);
    e >>= 1;
  }
  return r;
}

// Fermat inverse; a must be nonzero mod p.
std::uint64_t inv_mod(std::uint64_t a) {
  std::uint64_t r = 1, e = kPrime - 2;
  while (e) {
    if (e & 1u) r = mul_mod(r, a);
    a = mul_mod(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t rational_mod(const BigRational& c) {
  std::uint64_t n = mpz_fdiv_ui(c.get_num_mpz_t(), kPrime);
  if (mpz_cmp_ui(c.get_den_mpz_t(), 1) == 0) return n;
  return mul_mod(n, inv_mod(mpz_fdiv_ui(c.get_den_mpz_t(), kPrime)));
}

void trim(std::vector<std::uint64_t>& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Image of p in Z_p[v] with every other variable replaced by point[var].
std::vector<std::uint64_t> image(const Polynomial& p, VarId v,
                                 const std::vector<std::uint64_t>& point) {
  std::vector<std::uint64_t> out(p.degree(v) + 1, 0);
  for (const auto& t : p.terms()) {
    std::uint64_t val = rational_mod(t.coeff);
    for (std::size_t i = 0; i < kMaxVars && val; ++i) {
      auto id = static_cast<VarId>(i);
      if (id == v || t.mono[id] == 0) continue;
      val = mul_mod(val, pow_mod(point[i], t.mono[id]));
    }
    auto& slot = out[t.mono[v]];
    slot = (slot + val) % kPrime;
  }
  trim(out);
  return out;
}

std::size_t modular_gcd_degree(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
  while (!b.empty()) {
    // a <- a mod b
    std::uint64_t inv = inv_mod(b.back());
    while (a.size() >= b.size()) {
      std::uint64_t f = mul_mod(a.back(), inv);
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i)
        a[i + shift] = (a[i + shift] + kPrime - mul_mod(f, b[i])) % kPrime;
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

// True if A and B (as polynomials in v) are certainly coprime over the
// fraction field of the other variables. A false answer is inconclusive.
bool certainly_coprime_in(const Polynomial& a, const Polynomial& b, VarId v) {
  std::mt19937_64 rng(0x5eed1234u + v);
  std::uniform_int_distribution<std::uint64_t> dist(2, kPrime - 1);
  std::vector<std::uint64_t> point(kMaxVars);
  for (auto& p : point) p = dist(rng);
  auto ia = image(a, v, point);
  auto ib = image(b, v, point);
  // Vanishing leading coefficients invalidate the degree bound.
  if (ia.size() != a.degree(v) + 1 || ib.size() != b.degree(v) + 1) return false;
  return modular_gcd_degree(ia, ib) == 0;
}

unsigned udeg(const Upoly& p) { return static_cast<unsigned>(p.size()) - 1; }

void utrim(Upoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Upoly to_upoly(const Polynomial& p, VarId v) {
  Upoly u = p.coefficients_in(v);
  utrim(u);
  return u;
}

Polynomial exact(const Polynomial& a, const Polynomial& b) {
  auto q = Polynomial::divide_exact(a, b);
  if (!q) throw Error("internal: inexact division in gcd");
  return *q;
}

Upoly prem(Upoly a, const Upoly& b) {
  const unsigned db = udeg(b);
  const Polynomial& lcb = b.back();
  int e = static_cast<int>(udeg(a)) - static_cast<int>(db) + 1;
  while (!a.empty() && udeg(a) >= db) {
    Polynomial s = a.back();
    unsigned k = udeg(a) - db;
    for (auto& c : a) c *= lcb;
    for (unsigned i = 0; i <= db; ++i) a[i + k] -= s * b[i];
    utrim(a);
    --e;
  }
  if (e > 0 && !a.empty()) {
    Polynomial f = lcb.pow(static_cast<unsigned>(e));
    for (auto& c : a) c *= f;
  }
  return a;
}

class GcdEngine {
 public:
  explicit GcdEngine(unsigned cap) : cap_(cap) {}

  Polynomial run(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return primitive_integer(b);
    if (b.is_zero()) return primitive_integer(a);
    if (a.is_constant() || b.is_constant()) return Polynomial(1L);
    Monomial ma = a.monomial_content(), mb = b.monomial_content();
    Monomial m = Monomial::gcd(ma, mb);
    Polynomial g = core(primitive_integer(a.div_monomial(ma)), primitive_integer(b.div_monomial(mb)));
    return m.is_one() ? g : g.mul_monomial(m);
  }

 private:
  // Inputs primitive with no monomial content.
  Polynomial core(const Polynomial& a, const Polynomial& b) {
    if (a.is_constant() || b.is_constant()) return Polynomial(1L);
    if (a == b) return a;
    const Polynomial& small = a.size() <= b.size() ? a : b;
    const Polynomial& large = a.size() <= b.size() ? b : a;
    if (Polynomial::divide_exact(large, small)) return small;

    const std::uint32_t sa = a.support(), sb = b.support();
    if (std::uint32_t only = sa & ~sb) return content_fold(a, b, lowest(only));
    if (std::uint32_t only = sb & ~sa) return content_fold(b, a, lowest(only));

    VarId v = 0;
    unsigned best = ~0u;
    for (std::uint32_t s = sa; s; s &= s - 1) {
      VarId c = lowest(s);
      unsigned d = std::max(a.degree(c), b.degree(c));
      if (d < best) {
        best = d;
        v = c;
      }
    }
    if (std::min(a.degree(v), b.degree(v)) > cap_) return Polynomial(1L);

    Upoly ua = to_upoly(a, v), ub = to_upoly(b, v);
    Polynomial ca = content(ua), cb = content(ub);
    Polynomial c = run(ca, cb);
    if (certainly_coprime_in(a, b, v)) return c;
    if (!ca.is_one())
      for (auto& x : ua) x = exact(x, ca);
    if (!cb.is_one())
      for (auto& x : ub) x = exact(x, cb);
    Upoly g = subresultant(std::move(ua), std::move(ub));
    Polynomial gp = primitive_integer(Polynomial::from_coefficients(v, g));
    return c.is_one() ? gp : primitive_integer(c * gp);
  }

  static VarId lowest(std::uint32_t mask) { return static_cast<VarId>(std::countr_zero(mask)); }

  // gcd(a, b) where v occurs in a but not in b: fold b against a's
  // coefficients in v.
  Polynomial content_fold(const Polynomial& a, const Polynomial& b, VarId v) {
    Upoly coeffs = to_upoly(a, v);
    std::sort(coeffs.begin(), coeffs.end(),
              [](const Polynomial& x, const Polynomial& y) { return x.size() < y.size(); });
    Polynomial g = b;
    for (const auto& c : coeffs) {
      if (c.is_zero()) continue;
      g = run(g, c);
      if (g.is_one()) break;
    }
    return g;
  }

  Polynomial content(const Upoly& u) {
    std::vector<const Polynomial*> order;
    for (const auto& c : u)
      if (!c.is_zero()) order.push_back(&c);
    std::sort(order.begin(), order.end(),
              [](const Polynomial* x, const Polynomial* y) { return x->size() < y->size(); });
    Polynomial g;
    for (const Polynomial* c : order) {
      g = g.is_zero() ? primitive_integer(*c) : run(g, *c);
      if (g.is_one()) break;
    }
    return g;
  }

  Upoly primitive_part(Upoly u) {
    Polynomial c = content(u);
    if (!c.is_one())
      for (auto& x : u) x = exact(x, c);
    return u;
  }

  Upoly subresultant(Upoly a, Upoly b) {
    if (udeg(a) < udeg(b)) std::swap(a, b);
    Polynomial g(1L), h(1L);
    for (;;) {
      const unsigned d = udeg(a) - udeg(b);
      Upoly r = prem(a, b);
      if (r.empty()) return primitive_part(std::move(b));
      if (udeg(r) == 0) return Upoly{Polynomial(1L)};
      a = std::move(b);
      Polynomial divisor = g * h.pow(d);
      for (auto& x : r) x = exact(x, divisor);
      b = std::move(r);
      g = a.back();
      if (d > 0) h = exact(g.pow(d), h.pow(d - 1));
    }
  }

  unsigned cap_;
};

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b, unsigned degree_cap) {
  return GcdEngine(degree_cap).run(a, b);
}

}  // namespace flatlab::expr
