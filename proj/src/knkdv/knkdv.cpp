#include "flatlab/knkdv/knkdv.hpp"

#include "flatlab/error.hpp"
#include "flatlab/knkdv/antiderivative.hpp"

namespace flatlab::knkdv {

using expr::BigRational;
using expr::diff;

namespace {

RationalExpr q(long n, long d) { return RationalExpr(BigRational(n, d)); }

const expr::VarSetPtr& vars_of(const RationalExpr& e) {
  if (!e.vars()) throw DegenerateInput("expression is a bare constant with no variables");
  return e.vars();
}

RationalExpr nonzero_fx(const RationalExpr& f, const Coords& c) {
  if (!f.vars()) throw DegenerateInput("F is constant in " + c.x);
  RationalExpr fx = diff(f, c.x);
  if (fx.is_zero()) throw DegenerateInput("F is constant in " + c.x);
  return fx;
}

}  // namespace

RationalExpr kn_residual(const RationalExpr& f, const Coords& c) {
  RationalExpr fx = nonzero_fx(f, c);
  RationalExpr fxx = diff(fx, c.x);
  return diff(f, c.z) + diff(fxx, c.x) - q(3, 2) * fxx * fxx / fx;
}

RationalExpr kdv_residual(const RationalExpr& l, const Coords& c) {
  if (!l.vars()) return RationalExpr(0L);
  RationalExpr lx = diff(l, c.x);
  return diff(l, c.z) - RationalExpr(3L) * l * lx + diff(diff(lx, c.x), c.x);
}

RationalExpr m_constraint_residual(const RationalExpr& L, const RationalExpr& M, const std::string& u,
                                   const std::string& w) {
  auto d = [](const RationalExpr& e, const std::string& v) {
    return e.vars() ? diff(e, v) : RationalExpr(0L);
  };
  RationalExpr Lu = d(L, u);
  return d(M, w) - L * d(M, u) - Lu - RationalExpr(2L) * Lu * M;
}

RationalExpr l_from_f2(const RationalExpr& f, LForm form, const Coords& c) {
  RationalExpr fx = nonzero_fx(f, c);
  RationalExpr fxx = diff(fx, c.x);
  RationalExpr fxxx = diff(fxx, c.x);
  if (form == LForm::thm1) return q(-1, 3) * (diff(f, c.z) - RationalExpr(2L) * fxxx) / fx;
  return (fxxx - q(1, 2) * fxx * fxx / fx) / fx;
}

RationalExpr f1_from_f2(const RationalExpr& f, const Coords& c) {
  if (!f.vars()) return RationalExpr(0L);
  return RationalExpr(-2L) * diff(f, c.x);
}

RationalExpr b_from_f2(const RationalExpr& f, const std::string& y, const Coords& c) {
  RationalExpr f1 = f1_from_f2(f, c);
  RationalExpr Y = RationalExpr::variable(vars_of(f), y);
  return q(1, 4) * f1 * f1 * Y * Y + q(1, 2) * f1 * Y * f + q(1, 4) * f * f;
}

KNSolution kn_iterate(const KNSolution& in, const Coords& c) {
  const RationalExpr& f = in.f;
  if (!kn_residual(f, c).is_zero()) throw DegenerateInput(in.name() + " does not solve the KN equation");
  const auto& vars = vars_of(f);
  const expr::VarId x = vars->id(c.x), z = vars->id(c.z);

  RationalExpr integrand = f * f / diff(f, x);
  RationalExpr g = antiderivative(integrand, x);

  // G + h(z) solves KN iff h' = -kn_residual(G), which must be free of x.
  RationalExpr r = kn_residual(g, c);
  if (r.depends_on(x))
    throw IntegrationError("residual after x-integration depends on " + c.x + ": " + r.to_string());
  if (!r.is_zero()) g -= antiderivative(r, z);

  if (!kn_residual(g, c).is_zero()) throw IntegrationError("iterate does not solve the KN equation");
  return {g, in.generation + 1};
}

std::vector<KNSolution> kn_chain(const RationalExpr& start, unsigned generations, const Coords& c) {
  std::vector<KNSolution> out{{start, 0}};
  for (unsigned j = 0; j < generations; ++j) out.push_back(kn_iterate(out.back(), c));
  return out;
}

nlohmann::ordered_json pool_to_json(const std::vector<PoolEntry>& pool) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& e : pool) {
    nlohmann::ordered_json j;
    j["name"] = e.name;
    j["expr"] = e.expr;
    j["equation"] = e.equation;
    j["residual_verified"] = e.residual_verified;
    arr.push_back(std::move(j));
  }
  return arr;
}

std::vector<PoolEntry> pool_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error("solution pool must be a JSON array");
  std::vector<PoolEntry> out;
  for (const auto& e : j) {
    PoolEntry p;
    p.name = e.at("name").get<std::string>();
    p.expr = e.at("expr").get<std::string>();
    p.equation = e.at("equation").get<std::string>();
    if (p.equation != "kn" && p.equation != "kdv")
      throw Error("pool entry '" + p.name + "' has unknown equation '" + p.equation + "'");
    p.residual_verified = e.value("residual_verified", false);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace flatlab::knkdv
