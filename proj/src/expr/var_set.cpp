#include "flatlab/expr/var_set.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <functional>

#include "flatlab/error.hpp"

namespace flatlab::expr {

namespace {

bool valid_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::string jet_name(const std::string& fn, const std::vector<std::string>& args,
                     const std::vector<unsigned>& orders) {
  std::string suffix;
  for (std::size_t a = 0; a < args.size(); ++a)
    for (unsigned k = 0; k < orders[a]; ++k) suffix += args[a];
  return suffix.empty() ? fn : fn + "_" + suffix;
}

// All order vectors of length n with total order `total`, lexicographically
// descending so that x-derivatives come before z-derivatives.
void orders_with_total(std::size_t n, unsigned total, std::vector<std::vector<unsigned>>& out) {
  std::vector<unsigned> cur(n, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t pos, unsigned left) {
    if (pos + 1 == n) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (unsigned k = left + 1; k-- > 0;) {
      cur[pos] = k;
      rec(pos + 1, left - k);
    }
  };
  if (n == 0) {
    if (total == 0) out.emplace_back();
    return;
  }
  rec(0, total);
}

}  // namespace

VarSet::Builder& VarSet::Builder::symbol(std::string name) {
  symbols_.push_back(std::move(name));
  return *this;
}

VarSet::Builder& VarSet::Builder::symbols(std::initializer_list<std::string> names) {
  for (const auto& n : names) symbols_.push_back(n);
  return *this;
}

VarSet::Builder& VarSet::Builder::function(std::string name, std::vector<std::string> args,
                                           unsigned max_order) {
  functions_.push_back({std::move(name), std::move(args), max_order});
  return *this;
}

std::optional<unsigned> gcd_degree_cap_from_env() {
  const char* raw = std::getenv("FLATLAB_GCD_DEGREE_CAP");
  if (!raw) return std::nullopt;
  unsigned v = 0;
  const char* end = raw + std::strlen(raw);
  auto [p, ec] = std::from_chars(raw, end, v);
  if (ec != std::errc() || p != end || v == 0)
    throw Error(std::string("FLATLAB_GCD_DEGREE_CAP must be a positive integer, got '") + raw + "'");
  return v;
}

VarSet::Builder& VarSet::Builder::gcd_degree_cap(unsigned cap) {
  gcd_degree_cap_ = cap;
  return *this;
}

VarSetPtr VarSet::Builder::build() const {
  std::shared_ptr<VarSet> vs(new VarSet());
  vs->gcd_degree_cap_ = gcd_degree_cap_;
  auto add = [&](Variable v) {
    if (!valid_identifier(v.name)) throw Error("invalid identifier '" + v.name + "'");
    if (vs->find(v.name)) throw Error("duplicate variable '" + v.name + "'");
    if (vs->vars_.size() >= kMaxVars)
      throw Error("too many variables (limit " + std::to_string(kMaxVars) + ")");
    vs->vars_.push_back(std::move(v));
  };
  for (const auto& s : symbols_) add(Variable{s, VarKind::symbol, {}, {}, {}});
  for (const auto& f : functions_) {
    std::vector<VarId> arg_ids;
    for (const auto& a : f.args) {
      auto id = vs->find(a);
      if (!id || vs->is_jet(*id))
        throw Error("function '" + f.name + "' argument '" + a + "' is not a declared symbol");
      arg_ids.push_back(*id);
    }
    for (unsigned total = 0; total <= f.max_order; ++total) {
      std::vector<std::vector<unsigned>> all;
      orders_with_total(f.args.size(), total, all);
      for (auto& ord : all)
        add(Variable{jet_name(f.name, f.args, ord), VarKind::jet, f.name, arg_ids, ord});
    }
  }
  return vs;
}

std::optional<VarId> VarSet::find(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name == name) return static_cast<VarId>(i);
  return std::nullopt;
}

VarId VarSet::id(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw UnknownVariable("unknown variable '" + std::string(name) + "'");
}

bool VarSet::depends_on(VarId v, VarId coord) const {
  if (v == coord) return true;
  const auto& var = vars_.at(v);
  return var.kind == VarKind::jet &&
         std::find(var.args.begin(), var.args.end(), coord) != var.args.end();
}

std::optional<VarId> VarSet::jet(std::string_view function,
                                 const std::vector<unsigned>& orders) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].kind == VarKind::jet && vars_[i].function == function &&
        vars_[i].orders == orders)
      return static_cast<VarId>(i);
  return std::nullopt;
}

VarId VarSet::jet_derivative(VarId v, VarId coord) const {
  const auto& var = vars_.at(v);
  auto it = std::find(var.args.begin(), var.args.end(), coord);
  if (var.kind != VarKind::jet || it == var.args.end())
    throw Error("'" + var.name + "' does not depend on '" + name(coord) + "'");
  auto orders = var.orders;
  ++orders[static_cast<std::size_t>(it - var.args.begin())];
  if (auto j = jet(var.function, orders)) return *j;
  throw Error("derivative of '" + var.name + "' by '" + name(coord) +
              "' exceeds the registered jet order of '" + var.function + "'");
}

}  // namespace flatlab::expr
