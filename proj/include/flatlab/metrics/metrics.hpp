#pragma once

#include <array>
#include <string>
#include <vector>

#include "flatlab/knkdv/knkdv.hpp"
#include "flatlab/tensor/curvature.hpp"

namespace flatlab::metrics {

using expr::RationalExpr;
using expr::VarSetPtr;
using tensor::Connection;
using tensor::Metric;

/// x, y, z, u, v, w, eps, c and the unknown functions l(x, z), L(u, w) with
/// jets up to order 3. The GCD cap comes from FLATLAB_GCD_DEGREE_CAP when set.
VarSetPtr standard_vars();

using Names3 = std::array<std::string, 3>;

/// ds^2 = b^2 da^2 + 2 (b^2 L + M) da dc + 2 db dc
///        + (b^2 L^2 - 2 b L_a + 2 L + 2 L M) dc^2
/// on chart (a, b, c). L and M may depend only on a and c.
Metric kdv_block(const RationalExpr& L, const RationalExpr& M, const Names3& coords);

/// The 3D metric: kdv_block with M = -1/2.
Metric metric3d(const RationalExpr& l, const Names3& coords = {"x", "y", "z"});

/// Derived coefficients of the 6D metric built from a KN function F2.
struct KNInput {
  RationalExpr f2;
  RationalExpr f1;
  RationalExpr b;
  RationalExpr l_thm1;
  RationalExpr l_thm3;
  bool kn_solution = false;
  bool l_forms_agree = false;
};

/// Throws DegenerateInput if dF2/dx == 0 and ScopeError if F2 leaves (x, z).
KNInput kn_input(const RationalExpr& f2);

/// metric3d(l) on (x, y, z) plus g_uv = g_uw = g_vw = B/(wu + vw + uv)^2.
/// Throws Error if F2 solves the KN equation but the two l forms disagree.
Metric metric6d_kn(const RationalExpr& f2);

/// metric3d(l(F2)) on (x, y, z) plus kdv_block(L, M) on (u, v, w).
Metric metric6d_product(const RationalExpr& f2, const RationalExpr& L, const RationalExpr& M);

/// g_ij = -2 G^k_ij xi_k on the base, g(x^i, xi_i) = 1, zero on the fiber.
Metric riemann_extension(const Connection& c, const std::vector<std::string>& fiber);

/// The 6D metric printed as a Riemann extension of the 3D metric, term by
/// term, with each Christoffel symbol taken from `c` (a connection on
/// (x, y, z)). The printed dx dz term pairs v with G^3_12.
Metric eq8_literal(const Connection& c, const Names3& fiber = {"u", "v", "w"});

/// Copy of m with g_yy increased by eps. Throws ScopeError without a y.
Metric ricci_flat_deformation(const Metric& m, const RationalExpr& eps, const std::string& y = "y");

/// Upper-triangle index pairs (i <= j) where two metrics on the same chart differ.
std::vector<std::array<std::size_t, 2>> differing_entries(const Metric& a, const Metric& b);

}  // namespace flatlab::metrics
