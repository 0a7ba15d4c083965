#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <cstring>
#include <functional>

#include "flatlab/error.hpp"
#include "flatlab/expr/var_set.hpp"

namespace flatlab::expr {

/// Power product over the variables of a VarSet, stored as a dense exponent
/// vector indexed by VarId. Ordered graded-lexicographically: higher total
/// degree first, ties broken by the exponent of the earliest variable.
class Monomial {
 public:
  Monomial() = default;

  static Monomial variable(VarId v, unsigned exponent = 1) {
    Monomial m;
    m.set(v, exponent);
    return m;
  }

  unsigned operator[](VarId v) const { return exps_[v]; }

  void set(VarId v, unsigned exponent) {
    if (exponent > 0xFFFF) throw Error("monomial exponent overflow");
    degree_ = degree_ - exps_[v] + exponent;
    exps_[v] = static_cast<std::uint16_t>(exponent);
  }

  unsigned degree() const noexcept { return degree_; }
  bool is_one() const noexcept { return degree_ == 0; }

  /// Bit i set iff variable i occurs.
  std::uint32_t support() const noexcept {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exps_[i]) mask |= (1u << i);
    return mask;
  }

  Monomial& operator*=(const Monomial& o) {
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      unsigned e = unsigned(exps_[i]) + o.exps_[i];
      if (e > 0xFFFF) throw Error("monomial exponent overflow");
      exps_[i] = static_cast<std::uint16_t>(e);
    }
    degree_ += o.degree_;
    return *this;
  }
  friend Monomial operator*(Monomial a, const Monomial& b) { return a *= b; }

  bool divides(const Monomial& o) const noexcept {
    if (degree_ > o.degree_) return false;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exps_[i] > o.exps_[i]) return false;
    return true;
  }

  /// Precondition: b.divides(*this).
  Monomial operator/(const Monomial& b) const noexcept {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      r.exps_[i] = static_cast<std::uint16_t>(exps_[i] - b.exps_[i]);
    r.degree_ = degree_ - b.degree_;
    return r;
  }

  static Monomial gcd(const Monomial& a, const Monomial& b) noexcept {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      r.exps_[i] = std::min(a.exps_[i], b.exps_[i]);
      r.degree_ += r.exps_[i];
    }
    return r;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
    return a.degree_ == b.degree_ && a.exps_ == b.exps_;
  }

  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) noexcept {
    if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (a.exps_[i] != b.exps_[i]) return a.exps_[i] <=> b.exps_[i];
    return std::strong_ordering::equal;
  }

  std::size_t hash() const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto e : exps_) {
      h ^= e;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }

 private:
  std::array<std::uint16_t, kMaxVars> exps_{};
  std::uint32_t degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

}  // namespace flatlab::expr
