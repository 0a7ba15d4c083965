#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "flatlab/expr/rational_expr.hpp"

namespace flatlab::knkdv {

using expr::RationalExpr;

/// Names of the space and time coordinates the equations are written in.
struct Coords {
  std::string x = "x";
  std::string z = "z";
};

/// F_z + F_xxx - 3/2 F_xx^2 / F_x. Throws DegenerateInput if F_x == 0.
RationalExpr kn_residual(const RationalExpr& f, const Coords& c = {});

/// l_z - 3 l l_x + l_xxx.
RationalExpr kdv_residual(const RationalExpr& l, const Coords& c = {});

/// M_w - L M_u - L_u - 2 L_u M, in coordinates (u, w).
RationalExpr m_constraint_residual(const RationalExpr& L, const RationalExpr& M,
                                   const std::string& u = "u", const std::string& w = "w");

enum class LForm {
  /// -1/3 (F_z - 2 F_xxx) / F_x
  thm1,
  /// (F_xxx - 1/2 F_xx^2 / F_x) / F_x
  thm3,
};

RationalExpr l_from_f2(const RationalExpr& f, LForm form, const Coords& c = {});
/// F1 = -2 F_x
RationalExpr f1_from_f2(const RationalExpr& f, const Coords& c = {});
/// B = 1/4 F1^2 y^2 + 1/2 F1 y F + 1/4 F^2
RationalExpr b_from_f2(const RationalExpr& f, const std::string& y = "y", const Coords& c = {});

struct KNSolution {
  RationalExpr f;
  unsigned generation = 0;

  /// "F_20", "F_21", ...
  std::string name() const { return "F_2" + std::to_string(generation); }
};

/// Next solution G with G_x = F^2 / F_x and the free function of z chosen so
/// that G again solves the KN equation; the numeric constant is 0.
/// Throws DegenerateInput if F is not a solution, IntegrationError if either
/// integration step leaves the rational class.
KNSolution kn_iterate(const KNSolution& f, const Coords& c = {});

/// start followed by `generations` iterates.
std::vector<KNSolution> kn_chain(const RationalExpr& start, unsigned generations, const Coords& c = {});

/// One entry of a solution-pool file.
struct PoolEntry {
  std::string name;
  std::string expr;
  std::string equation;  // "kn" or "kdv"
  bool residual_verified = false;
};

nlohmann::ordered_json pool_to_json(const std::vector<PoolEntry>& pool);
std::vector<PoolEntry> pool_from_json(const nlohmann::json& j);

}  // namespace flatlab::knkdv
