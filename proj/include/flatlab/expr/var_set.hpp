#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace flatlab::expr {

using VarId = std::uint8_t;

/// Upper bound on the number of variables in one VarSet. Monomials store a
/// dense exponent vector of this length.
inline constexpr std::size_t kMaxVars = 32;

inline constexpr unsigned kDefaultGcdDegreeCap = 64;

/// FLATLAB_GCD_DEGREE_CAP as a positive integer, or nullopt when unset.
/// Throws Error on any other value.
std::optional<unsigned> gcd_degree_cap_from_env();

enum class VarKind { symbol, jet };

/// A plain symbol (coordinate or constant parameter) or one jet coordinate of
/// an unknown function: `l_xxz` is d^3 l / dx^2 dz for `l(x, z)`.
struct Variable {
  std::string name;
  VarKind kind = VarKind::symbol;
  std::string function;          // jets: base function name
  std::vector<VarId> args;       // jets: symbols the function depends on
  std::vector<unsigned> orders;  // jets: derivative order per argument
};

class VarSet;
using VarSetPtr = std::shared_ptr<const VarSet>;

/// Ordered variable registry shared by every expression of a session. The
/// order fixes the monomial order (graded lex, earlier variables larger).
/// Immutable once built.
class VarSet {
 public:
  class Builder {
   public:
    Builder& symbol(std::string name);
    Builder& symbols(std::initializer_list<std::string> names);
    /// Registers `name(args...)` with all partial derivatives up to total
    /// order `max_order` as jet variables.
    Builder& function(std::string name, std::vector<std::string> args, unsigned max_order);
    Builder& gcd_degree_cap(unsigned cap);
    VarSetPtr build() const;

   private:
    struct FunctionDecl {
      std::string name;
      std::vector<std::string> args;
      unsigned max_order;
    };
    std::vector<std::string> symbols_;
    std::vector<FunctionDecl> functions_;
    unsigned gcd_degree_cap_ = kDefaultGcdDegreeCap;
  };

  std::size_t size() const noexcept { return vars_.size(); }
  const Variable& operator[](VarId id) const { return vars_.at(id); }
  const std::string& name(VarId id) const { return vars_.at(id).name; }

  std::optional<VarId> find(std::string_view name) const;
  /// Throws UnknownVariable.
  VarId id(std::string_view name) const;

  bool is_jet(VarId id) const { return vars_.at(id).kind == VarKind::jet; }
  /// True if `v` is `coord` itself or a jet whose function depends on `coord`.
  bool depends_on(VarId v, VarId coord) const;
  /// The jet obtained by differentiating jet `v` once in `coord`. Throws if
  /// the registered maximum order would be exceeded.
  VarId jet_derivative(VarId v, VarId coord) const;
  /// The jet of function `function` with the given per-argument orders.
  std::optional<VarId> jet(std::string_view function, const std::vector<unsigned>& orders) const;

  unsigned gcd_degree_cap() const noexcept { return gcd_degree_cap_; }

 private:
  VarSet() = default;
  std::vector<Variable> vars_;
  unsigned gcd_degree_cap_ = kDefaultGcdDegreeCap;
};

}  // namespace flatlab::expr
