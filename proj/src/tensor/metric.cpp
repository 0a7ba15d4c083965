#include "flatlab/tensor/metric.hpp"

#include <algorithm>
#include <numeric>

#include "flatlab/error.hpp"

namespace flatlab::tensor {

Chart::Chart(VarSetPtr vars, const std::vector<std::string>& names) : vars_(std::move(vars)) {
  if (!vars_) throw Error("chart needs a variable set");
  for (const auto& n : names) coords_.push_back(vars_->id(n));
  validate();
}

Chart Chart::from_ids(VarSetPtr vars, std::vector<VarId> coords) {
  if (!vars) throw Error("chart needs a variable set");
  Chart c;
  c.vars_ = std::move(vars);
  c.coords_ = std::move(coords);
  c.validate();
  return c;
}

void Chart::validate() const {
  if (coords_.empty() || coords_.size() > kMaxDim)
    throw DimensionMismatch("chart dimension must be between 1 and " + std::to_string(kMaxDim));
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] >= vars_->size()) throw UnknownVariable("chart coordinate out of range");
    if (vars_->is_jet(coords_[i]))
      throw Error("chart coordinate '" + vars_->name(coords_[i]) + "' is a function jet");
    for (std::size_t j = 0; j < i; ++j)
      if (coords_[i] == coords_[j])
        throw Error("duplicate chart coordinate '" + vars_->name(coords_[i]) + "'");
  }
}

std::optional<std::size_t> Chart::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < coords_.size(); ++i)
    if (vars_->name(coords_[i]) == name) return i;
  return std::nullopt;
}

SymbolicMatrix SymbolicMatrix::identity(std::size_t n) {
  SymbolicMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = RationalExpr(1L);
  return m;
}

SymbolicMatrix operator*(const SymbolicMatrix& a, const SymbolicMatrix& b) {
  if (a.size() != b.size()) throw DimensionMismatch("matrix size mismatch");
  const std::size_t n = a.size();
  SymbolicMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      RationalExpr s;
      for (std::size_t k = 0; k < n; ++k)
        if (!a(i, k).is_zero() && !b(k, j).is_zero()) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

bool operator==(const SymbolicMatrix& a, const SymbolicMatrix& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.data_.size(); ++i)
    if (!(a.data_[i] == b.data_[i])) return false;
  return true;
}

Metric::Metric(Chart chart, SymbolicMatrix g) : chart_(std::move(chart)), g_(std::move(g)) {
  if (g_.size() != chart_.dim()) throw DimensionMismatch("metric size does not match chart");
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i + 1; j < dim(); ++j)
      if (!(g_(i, j) == g_(j, i)))
        throw Error("metric is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
}

Metric Metric::with(std::size_t i, std::size_t j, const RationalExpr& value) const {
  SymbolicMatrix g = g_;
  g(i, j) = value;
  g(j, i) = value;
  return Metric(chart_, std::move(g));
}

namespace {

SymbolicMatrix minor_of(const SymbolicMatrix& a, std::size_t row, std::size_t col) {
  const std::size_t n = a.size();
  SymbolicMatrix m(n - 1);
  for (std::size_t i = 0, r = 0; i < n; ++i) {
    if (i == row) continue;
    for (std::size_t j = 0, c = 0; j < n; ++j) {
      if (j == col) continue;
      m(r, c++) = a(i, j);
    }
    ++r;
  }
  return m;
}

SymbolicMatrix adjugate_inverse(const SymbolicMatrix& a) {
  const std::size_t n = a.size();
  RationalExpr det = determinant(a);
  if (det.is_zero()) throw SingularMetric("metric is degenerate (zero determinant)");
  SymbolicMatrix inv(n);
  if (n == 1) {
    inv(0, 0) = RationalExpr(1L) / a(0, 0);
    return inv;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      RationalExpr cof = determinant(minor_of(a, j, i));
      if ((i + j) % 2) cof = -cof;
      inv(i, j) = cof.is_zero() ? cof : cof / det;
    }
  return inv;
}

SymbolicMatrix gauss_jordan_inverse(const SymbolicMatrix& a) {
  const std::size_t n = a.size();
  SymbolicMatrix m = a, inv = SymbolicMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    // Pivot: the nonzero entry with the smallest representation.
    std::size_t pivot = n;
    std::size_t best = ~std::size_t{0};
    for (std::size_t r = col; r < n; ++r) {
      if (m(r, col).is_zero()) continue;
      std::size_t cost = m(r, col).num().size() + m(r, col).den().size();
      if (cost < best) {
        best = cost;
        pivot = r;
      }
    }
    if (pivot == n) throw SingularMetric("metric is degenerate (zero determinant)");
    if (pivot != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(pivot, j), m(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    RationalExpr p = m(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      if (!m(col, j).is_zero()) m(col, j) = m(col, j) / p;
      if (!inv(col, j).is_zero()) inv(col, j) = inv(col, j) / p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m(r, col).is_zero()) continue;
      RationalExpr f = m(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        if (!m(col, j).is_zero()) m(r, j) -= f * m(col, j);
        if (!inv(col, j).is_zero()) inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

SymbolicMatrix invert(const SymbolicMatrix& a);

// Connected components of the graph whose edges are nonzero off-diagonal
// entries.
std::vector<std::vector<std::size_t>> blocks_of(const SymbolicMatrix& a) {
  const std::size_t n = a.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!a(i, j).is_zero() || !a(j, i).is_zero()) parent[find(i)] = find(j);
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = find(i);
    if (slot[r] == n) {
      slot[r] = out.size();
      out.emplace_back();
    }
    out[slot[r]].push_back(i);
  }
  return out;
}

SymbolicMatrix invert(const SymbolicMatrix& a) {
  const std::size_t n = a.size();
  if (n <= 4) return adjugate_inverse(a);
  auto blocks = blocks_of(a);
  if (blocks.size() == 1) return gauss_jordan_inverse(a);
  SymbolicMatrix inv(n);
  for (const auto& idx : blocks) {
    SymbolicMatrix sub(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) sub(i, j) = a(idx[i], idx[j]);
    SymbolicMatrix sub_inv = invert(sub);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) inv(idx[i], idx[j]) = sub_inv(i, j);
  }
  return inv;
}

}  // namespace

RationalExpr determinant(const SymbolicMatrix& a) {
  const std::size_t n = a.size();
  if (n == 0) return RationalExpr(1L);
  if (n == 1) return a(0, 0);
  if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  RationalExpr det;
  for (std::size_t j = 0; j < n; ++j) {
    if (a(0, j).is_zero()) continue;
    RationalExpr term = a(0, j) * determinant(minor_of(a, 0, j));
    det = (j % 2) ? det - term : det + term;
  }
  return det;
}

SymbolicMatrix inverse_metric(const Metric& m) { return invert(m.components()); }

}  // namespace flatlab::tensor
