#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flatlab/expr/rational_expr.hpp"

namespace flatlab::tensor {

using expr::RationalExpr;
using expr::VarId;
using expr::VarSetPtr;

inline constexpr std::size_t kMaxDim = 8;

/// Ordered coordinate symbols of a local chart.
class Chart {
 public:
  Chart(VarSetPtr vars, const std::vector<std::string>& names);
  static Chart from_ids(VarSetPtr vars, std::vector<VarId> coords);

  std::size_t dim() const noexcept { return coords_.size(); }
  VarId coord(std::size_t i) const { return coords_.at(i); }
  const std::vector<VarId>& coords() const noexcept { return coords_; }
  const std::string& name(std::size_t i) const { return vars_->name(coords_.at(i)); }
  const VarSetPtr& vars() const noexcept { return vars_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  friend bool operator==(const Chart& a, const Chart& b) {
    return a.vars_ == b.vars_ && a.coords_ == b.coords_;
  }

 private:
  Chart() = default;
  VarSetPtr vars_;
  std::vector<VarId> coords_;
  void validate() const;
};

/// Dense n x n array of expressions.
class SymbolicMatrix {
 public:
  SymbolicMatrix() = default;
  explicit SymbolicMatrix(std::size_t n) : n_(n), data_(n * n) {}
  static SymbolicMatrix identity(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  RationalExpr& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const RationalExpr& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  friend SymbolicMatrix operator*(const SymbolicMatrix& a, const SymbolicMatrix& b);
  /// Entrywise mathematical equality.
  friend bool operator==(const SymbolicMatrix& a, const SymbolicMatrix& b);

 private:
  std::size_t n_ = 0;
  std::vector<RationalExpr> data_;
};

/// Symmetric metric g_ij on a chart. Symmetry is checked on construction;
/// degeneracy is detected when the inverse is taken.
class Metric {
 public:
  Metric(Chart chart, SymbolicMatrix g);

  const Chart& chart() const noexcept { return chart_; }
  std::size_t dim() const noexcept { return chart_.dim(); }
  const RationalExpr& operator()(std::size_t i, std::size_t j) const { return g_(i, j); }
  const SymbolicMatrix& components() const noexcept { return g_; }

  /// Copy with g_ij = g_ji = value.
  Metric with(std::size_t i, std::size_t j, const RationalExpr& value) const;

 private:
  Chart chart_;
  SymbolicMatrix g_;
};

/// Exact inverse. Uses the adjugate up to dimension 4, splits structurally
/// block-diagonal metrics into blocks, and falls back to Gauss-Jordan
/// elimination otherwise. Throws SingularMetric.
SymbolicMatrix inverse_metric(const Metric& m);

/// Exact determinant by cofactor expansion (intended for dim <= 4).
RationalExpr determinant(const SymbolicMatrix& a);

}  // namespace flatlab::tensor
