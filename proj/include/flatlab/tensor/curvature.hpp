#pragma once

#include <vector>

#include "flatlab/tensor/metric.hpp"

namespace flatlab::tensor {

/// Christoffel symbols, indexed (k, i, j) for Gamma^k_ij.
class Connection {
 public:
  explicit Connection(Chart chart);

  const Chart& chart() const noexcept { return chart_; }
  std::size_t dim() const noexcept { return chart_.dim(); }
  RationalExpr& operator()(std::size_t k, std::size_t i, std::size_t j) {
    return g_[(k * dim() + i) * dim() + j];
  }
  const RationalExpr& operator()(std::size_t k, std::size_t i, std::size_t j) const {
    return g_[(k * dim() + i) * dim() + j];
  }
  bool is_symmetric() const;

 private:
  Chart chart_;
  std::vector<RationalExpr> g_;
};

/// R^l_ijk, indexed (l, i, j, k).
class Riemann {
 public:
  explicit Riemann(Chart chart);

  const Chart& chart() const noexcept { return chart_; }
  std::size_t dim() const noexcept { return chart_.dim(); }
  RationalExpr& operator()(std::size_t l, std::size_t i, std::size_t j, std::size_t k) {
    return r_[((l * dim() + i) * dim() + j) * dim() + k];
  }
  const RationalExpr& operator()(std::size_t l, std::size_t i, std::size_t j, std::size_t k) const {
    return r_[((l * dim() + i) * dim() + j) * dim() + k];
  }
  bool is_zero() const;

 private:
  Chart chart_;
  std::vector<RationalExpr> r_;
};

struct Ricci {
  Chart chart;
  SymbolicMatrix ric;
  bool is_zero() const;
};

/// Levi-Civita connection.
Connection christoffel(const Metric& m);
Connection christoffel(const Metric& m, const SymbolicMatrix& inverse);

/// R^l_ijk = d_i G^l_jk - d_j G^l_ik + G^l_im G^m_jk - G^l_jm G^m_ik.
/// Only i < j is computed; the rest follows from antisymmetry.
Riemann riemann_from_connection(const Connection& c);

/// Ric_jk = R^l_ljk.
Ricci ricci(const Riemann& r);

/// Components of d_k g_ij - G^m_ki g_mj - G^m_kj g_im, indexed (k, i, j);
/// all zero for a metric-compatible connection.
std::vector<RationalExpr> compatibility_defect(const Metric& m, const Connection& c);

}  // namespace flatlab::tensor
