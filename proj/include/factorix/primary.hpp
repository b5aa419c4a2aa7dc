#pragma once

// Reduced finitely primary monoids of rank 1, H ⊂ [p] × V with V a finite
// abelian unit group, given by the level sets U_n = { u ∈ V : p^n u ∈ H }.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "factorix/abelian.hpp"
#include "factorix/error.hpp"
#include "factorix/factorization.hpp"
#include "factorix/rational.hpp"

namespace factorix {

/// Largest unit group accepted for a component.
inline constexpr std::size_t kMaxUnitGroupOrder = 4096;

/// p^valuation · unit, with the unit stored as its index in the
/// lexicographic enumeration of the unit group.
struct PrimaryElement {
  int valuation = 0;
  std::size_t unit = 0;

  friend bool operator==(const PrimaryElement&, const PrimaryElement&) = default;
  friend auto operator<=>(const PrimaryElement&, const PrimaryElement&) = default;
};

class PrimaryMonoidSpec {
 public:
  /// `levels` lists U_0 .. U_{k-1}; U_n for n >= k is the whole unit group.
  /// Throws ValidationError (with a field-relative path) on incoherent tables.
  PrimaryMonoidSpec(FiniteAbelianGroup units, int k, const std::vector<std::set<GroupElement>>& levels)
      : units_(std::move(units)), k_(k) {
    if (units_.order() > kMaxUnitGroupOrder)
      throw ValidationError("units", "unit group order above " + std::to_string(kMaxUnitGroupOrder));
    if (k_ < 1) throw ValidationError("k", "exponent must be >= 1");
    if (static_cast<int>(levels.size()) != k_)
      throw ValidationError("levels", "expected " + std::to_string(k_) + " level sets (U_0..U_{k-1}), got " +
                                          std::to_string(levels.size()));
    const std::size_t n = units_.order();
    masks_.assign(static_cast<std::size_t>(k_), std::vector<char>(n, 0));
    for (int i = 0; i < k_; ++i)
      for (const auto& u : levels[i]) {
        if (!units_.contains(u))
          throw ValidationError("levels[" + std::to_string(i) + "]",
                                "(" + u.str() + ") is not an element of " + units_.str());
        masks_[i][units_.index_of(u)] = 1;
      }
    if (std::count(masks_[0].begin(), masks_[0].end(), 1) != 1 || !masks_[0][0])
      throw ValidationError("levels[0]", "U_0 must be exactly {identity}");
    for (int i = 1; i < k_; ++i)
      for (int j = i; i + j < k_; ++j)
        for (std::size_t a = 0; a < n; ++a) {
          if (!masks_[i][a]) continue;
          for (std::size_t b = 0; b < n; ++b)
            if (masks_[j][b] && !masks_[i + j][units_.add_index(a, b)])
              throw ValidationError("levels[" + std::to_string(i + j) + "]",
                                    "U_" + std::to_string(i) + " * U_" + std::to_string(j) + " is not contained in U_" +
                                        std::to_string(i + j));
        }
    if (k_ >= 2 && std::all_of(masks_[k_ - 1].begin(), masks_[k_ - 1].end(), [](char c) { return c != 0; }))
      throw ValidationError("k", "U_" + std::to_string(k_ - 1) + " is the whole unit group; exponent is not minimal");
  }

  const FiniteAbelianGroup& units() const { return units_; }
  std::size_t unit_count() const { return units_.order(); }
  int exponent() const { return k_; }

  /// u ∈ U_n
  bool contains(int n, std::size_t unit) const {
    if (n < 0 || unit >= units_.order()) return false;
    if (n >= k_) return true;
    return masks_[static_cast<std::size_t>(n)][unit] != 0;
  }
  bool contains(int n, const GroupElement& u) const { return units_.contains(u) && contains(n, units_.index_of(u)); }
  bool contains(const PrimaryElement& e) const { return contains(e.valuation, e.unit); }

  std::vector<std::size_t> level(int n) const {
    std::vector<std::size_t> out;
    for (std::size_t u = 0; u < units_.order(); ++u)
      if (contains(n, u)) out.push_back(u);
    return out;
  }

  std::set<GroupElement> level_elements(int n) const {
    std::set<GroupElement> out;
    for (auto u : level(n)) out.insert(units_.at(u));
    return out;
  }

  std::string element_str(const PrimaryElement& e) const {
    if (e.valuation == 0 && e.unit == 0) return "1";
    std::string out = e.valuation == 0 ? "" : (e.valuation == 1 ? "p" : "p^" + std::to_string(e.valuation));
    if (e.unit != 0) out += "[" + units_.at(e.unit).str() + "]";
    return out;
  }

  friend bool operator==(const PrimaryMonoidSpec& a, const PrimaryMonoidSpec& b) {
    return a.units_ == b.units_ && a.k_ == b.k_ && a.masks_ == b.masks_;
  }

 private:
  FiniteAbelianGroup units_;
  int k_ = 1;
  std::vector<std::vector<char>> masks_;
};

inline bool is_member(const PrimaryMonoidSpec& spec, int n, const GroupElement& u) {
  spec.units().require(u);
  return spec.contains(n, u);
}

/// Adapter for the factorization engine.
class PrimaryMonoid {
 public:
  using element_type = PrimaryElement;
  struct element_hash {
    std::size_t operator()(const PrimaryElement& e) const {
      return std::hash<std::size_t>{}(e.unit * 1315423911u + static_cast<std::size_t>(e.valuation));
    }
  };

  explicit PrimaryMonoid(PrimaryMonoidSpec spec) : spec_(std::move(spec)) {}

  const PrimaryMonoidSpec& spec() const { return spec_; }
  PrimaryElement identity() const { return {}; }
  PrimaryElement multiply(const PrimaryElement& a, const PrimaryElement& b) const {
    return {a.valuation + b.valuation, spec_.units().add_index(a.unit, b.unit)};
  }
  std::optional<PrimaryElement> divide(const PrimaryElement& b, const PrimaryElement& a) const {
    if (a.valuation > b.valuation) return std::nullopt;
    PrimaryElement q{b.valuation - a.valuation, spec_.units().add_index(b.unit, spec_.units().negate_index(a.unit))};
    if (!spec_.contains(q)) return std::nullopt;
    return q;
  }

  /// All members with valuation <= max_valuation, ordered by (valuation, unit).
  std::vector<PrimaryElement> members(int max_valuation) const {
    std::vector<PrimaryElement> out;
    for (int n = 0; n <= max_valuation; ++n)
      for (auto u : spec_.level(n)) out.push_back({n, u});
    return out;
  }

 private:
  PrimaryMonoidSpec spec_;
};

/// Members p^n u (n >= 1) with no splitting into two non-units. Atoms have
/// n <= 2k-1: above that p^n u = (p^k u)(p^{n-k}).
inline std::vector<PrimaryElement> atoms(const PrimaryMonoidSpec& spec) {
  PrimaryMonoid m(spec);
  const int top = 2 * spec.exponent() - 1;
  std::vector<PrimaryElement> out;
  for (int n = 1; n <= top; ++n)
    for (auto u : spec.level(n)) {
      PrimaryElement e{n, u};
      bool splits = false;
      for (int a = 1; a <= n / 2 && !splits; ++a)
        for (auto v : spec.level(a)) {
          auto rest = m.divide(e, {a, v});
          if (rest && rest->valuation >= 1) {
            splits = true;
            break;
          }
        }
      if (!splits) out.push_back(e);
    }
  return out;
}

/// Every atom has valuation 1.
inline bool is_half_factorial(const PrimaryMonoidSpec& spec) {
  auto A = atoms(spec);
  return std::all_of(A.begin(), A.end(), [](const PrimaryElement& a) { return a.valuation == 1; });
}

/// (U_1)^l = U_l for l = 1..k. Independent of the atom search.
inline bool is_half_factorial_by_levels(const PrimaryMonoidSpec& spec) {
  const auto& V = spec.units();
  std::vector<char> power(V.order(), 0);
  power[0] = 1;  // (U_1)^0
  for (int l = 1; l <= spec.exponent(); ++l) {
    std::vector<char> next(V.order(), 0);
    for (std::size_t a = 0; a < V.order(); ++a) {
      if (!power[a]) continue;
      for (auto b : spec.level(1)) next[V.add_index(a, b)] = 1;
    }
    power = std::move(next);
    for (std::size_t u = 0; u < V.order(); ++u)
      if ((power[u] != 0) != spec.contains(l, u)) return false;
  }
  return true;
}

struct LocalInvariants {
  int max_valuation = 0;
  int catenary = 0;
  int monotone_catenary = 0;
  int tame = 0;
  bool half_factorial = true;
  Rational rho{1};
};

/// Brute-force invariants over every member of valuation <= max_valuation.
inline LocalInvariants local_invariants(const PrimaryMonoidSpec& spec, int max_valuation) {
  if (max_valuation < 2 * spec.exponent())
    throw std::invalid_argument("local_invariants needs max_valuation >= 2k");
  PrimaryMonoid m(spec);
  Factorizer<PrimaryMonoid> f(m, atoms(spec));
  auto inv = brute_force_invariants(f, m.members(max_valuation), true);
  return {max_valuation, inv.catenary, inv.monotone_catenary, *inv.tame, inv.half_factorial, inv.rho};
}

/// Default range for local_invariants: two exponents beyond the atom bound.
inline int default_local_valuation(const PrimaryMonoidSpec& spec) { return 2 * spec.exponent() + 2; }

}  // namespace factorix
