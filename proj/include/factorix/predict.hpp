#pragma once

// Closed-form predictions for B(G, T, ι) with locally half-factorial T:
// the sets I and J, the count k, and the case table by |G|.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "factorix/abelian.hpp"
#include "factorix/error.hpp"
#include "factorix/primary.hpp"
#include "factorix/rational.hpp"
#include "factorix/tblock.hpp"

namespace factorix {

enum class Tri { False, True, Unknown };

inline std::string to_string(Tri t) {
  switch (t) {
    case Tri::False: return "false";
    case Tri::True: return "true";
    default: return "unknown";
  }
}

/// Integer quantity: exact when lo == hi, an interval otherwise; unknown when
/// neither end is set.
struct IntPrediction {
  std::optional<int> lo;
  std::optional<int> hi;
  std::string provenance;

  static IntPrediction exact(int v, std::string why) { return {v, v, std::move(why)}; }
  static IntPrediction between(std::optional<int> lo, std::optional<int> hi, std::string why) {
    return {lo, hi, std::move(why)};
  }

  bool known() const { return lo || hi; }
  bool is_exact() const { return lo && hi && *lo == *hi; }
  bool contains(int v) const { return (!lo || *lo <= v) && (!hi || v <= *hi); }
  std::string str() const {
    if (!known()) return "?";
    if (is_exact()) return std::to_string(*lo);
    return "[" + (lo ? std::to_string(*lo) : std::string("-inf")) + "," + (hi ? std::to_string(*hi) : std::string("inf")) +
           "]";
  }

  friend bool operator==(const IntPrediction&, const IntPrediction&) = default;
};

struct RationalPrediction {
  std::optional<Rational> lo;
  std::optional<Rational> hi;
  bool lo_strict = false;
  std::string provenance;

  bool known() const { return lo || hi; }
  bool is_exact() const { return lo && hi && *lo == *hi && !lo_strict; }
  bool contains(const Rational& v) const {
    if (lo && (lo_strict ? !(*lo < v) : v < *lo)) return false;
    return !hi || !(*hi < v);
  }
  std::string str() const {
    if (!known()) return "?";
    if (is_exact()) return lo->str();
    return std::string(lo_strict ? "(" : "[") + (lo ? lo->str() : "-inf") + "," + (hi ? hi->str() : "inf") + "]";
  }

  friend bool operator==(const RationalPrediction&, const RationalPrediction&) = default;
};

/// Δ: either an exact set, or constraints (subset of, minimum).
struct DeltaPrediction {
  std::optional<std::set<int>> exact;
  std::optional<std::set<int>> subset_of;
  std::optional<int> min;  // min Δ when Δ is nonempty
  std::string provenance;

  bool known() const { return exact || subset_of || min; }
  bool contains(const std::set<int>& d) const {
    if (exact) return d == *exact;
    if (subset_of && !std::includes(subset_of->begin(), subset_of->end(), d.begin(), d.end())) return false;
    if (min && !d.empty() && *d.begin() != *min) return false;
    return true;
  }
  std::string str() const {
    auto set_str = [](const std::set<int>& s) {
      std::string out = "{";
      for (int x : s) out += (out.size() > 1 ? "," : "") + std::to_string(x);
      return out + "}";
    };
    if (exact) return set_str(*exact);
    std::string out;
    if (subset_of) out += "subset of " + set_str(*subset_of);
    if (min) out += std::string(out.empty() ? "" : ", ") + "min " + std::to_string(*min);
    return out.empty() ? "?" : out;
  }

  friend bool operator==(const DeltaPrediction&, const DeltaPrediction&) = default;
};

struct Prediction {
  Tri half_factorial = Tri::Unknown;
  std::string half_factorial_provenance;
  IntPrediction c;
  IntPrediction cmon;
  RationalPrediction rho;
  DeltaPrediction delta;
  bool t_is_2_iff_hf = false;
  std::string t_provenance;

  std::optional<std::set<std::size_t>> I;
  std::optional<std::set<std::size_t>> J;
  std::optional<int> k;
  /// Set when both #I and k are defined; they must agree.
  std::optional<bool> I_matches_k;

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

inline void require_half_factorial_components(const InstanceSpec& inst) {
  for (std::size_t i = 0; i < inst.num_components(); ++i)
    if (!is_half_factorial(inst.primary(i)))
      throw UnsupportedInstance("component " + std::to_string(i) + " is not half-factorial");
}

namespace detail {

/// Units ε ∈ U_1 of component i with ι(ε) equal to the given class.
inline std::vector<std::size_t> unit_fiber(const InstanceSpec& inst, std::size_t i, std::size_t cls) {
  std::vector<std::size_t> out;
  for (auto e : inst.primary(i).level(1))
    if (inst.unit_class(i, e) == cls) out.push_back(e);
  return out;
}

inline std::vector<char> square_set(const FiniteAbelianGroup& V, const std::vector<std::size_t>& S) {
  std::vector<char> out(V.order(), 0);
  for (auto a : S)
    for (auto b : S) out[V.add_index(a, b)] = 1;
  return out;
}

}  // namespace detail

/// I = { i : (U_1)_0^2 ∩ (U_1)_g^2 ≠ ∅ }.
inline std::set<std::size_t> compute_I(const InstanceSpec& inst) {
  if (inst.group().order() != 2) throw UnsupportedInstance("I is defined for |G| = 2");
  require_half_factorial_components(inst);
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < inst.num_components(); ++i) {
    const auto& V = inst.primary(i).units();
    auto sq0 = detail::square_set(V, detail::unit_fiber(inst, i, 0));
    auto sqg = detail::square_set(V, detail::unit_fiber(inst, i, 1));
    for (std::size_t u = 0; u < V.order(); ++u)
      if (sq0[u] && sqg[u]) {
        out.insert(i);
        break;
      }
  }
  return out;
}

/// J = { i : k_i = 2 and c(D_i) = 3 }.
inline std::set<std::size_t> compute_J(const InstanceSpec& inst) {
  if (inst.group().order() != 2) throw UnsupportedInstance("J is defined for |G| = 2");
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < inst.num_components(); ++i) {
    const auto& spec = inst.primary(i);
    if (spec.exponent() != 2) continue;
    if (local_invariants(spec, default_local_valuation(spec)).catenary == 3) out.insert(i);
  }
  return out;
}

/// Number of components whose unit group maps onto G.
inline int compute_k(const InstanceSpec& inst) {
  if (inst.group().order() != 2) throw UnsupportedInstance("k is defined for |G| = 2");
  int k = 0;
  for (std::size_t i = 0; i < inst.num_components(); ++i) {
    if (inst.primary(i).exponent() != 1) throw UnsupportedInstance("k needs every component of exponent 1");
    const auto& V = inst.primary(i).units();
    for (std::size_t u = 0; u < V.order(); ++u)
      if (inst.unit_class(i, u) != 0) {
        ++k;
        break;
      }
  }
  return k;
}

/// Largest local catenary degree over the components (0 without components).
inline int max_local_catenary(const InstanceSpec& inst) {
  int c = 0;
  for (const auto& comp : inst.components())
    c = std::max(c, local_invariants(comp.primary, default_local_valuation(comp.primary)).catenary);
  return c;
}

inline Prediction predict(const InstanceSpec& inst) {
  require_half_factorial_components(inst);
  Prediction p;
  const std::size_t order = inst.group().order();
  const bool all_exp_one = std::all_of(inst.components().begin(), inst.components().end(),
                                       [](const ComponentSpec& c) { return c.primary.exponent() == 1; });

  if (order == 1) {
    const int c = max_local_catenary(inst);
    const std::string why = "trivial class group: B equals the ambient monoid";
    p.half_factorial = Tri::True;
    p.half_factorial_provenance = why;
    p.c = IntPrediction::exact(c, why + ", c = max local c");
    p.cmon = IntPrediction::exact(c, "half-factorial: cmon = c");
    p.rho = {Rational(1), Rational(1), false, "half-factorial"};
    p.delta.exact = std::set<int>{};
    p.delta.provenance = "half-factorial";
    return p;
  }

  if (order >= 3) {
    const int D = davenport_constant(inst.group());
    const std::string why = "|G| >= 3";
    p.half_factorial = Tri::False;
    p.half_factorial_provenance = why + ": rho > 1";
    p.c = IntPrediction::between(3, D * D, why + ": 3 <= c <= D(G)^2");
    p.cmon = IntPrediction::between(3, std::nullopt, "cmon >= c >= 3");
    p.rho = {Rational(1), Rational(D), true, why + ": 1 < rho <= D(G) rho(T), rho(T) = 1"};
    p.delta.min = 1;
    p.delta.provenance = why + ": min delta = 1";
    return p;
  }

  // |G| = 2
  const auto I = compute_I(inst);
  const auto J = compute_J(inst);
  p.I = I;
  p.J = J;
  const std::size_t s = inst.s();
  const bool all_p_trivial = std::all_of(inst.components().begin(), inst.components().end(),
                                         [&](const ComponentSpec& c) { return inst.group().index_of(c.iota_p) == 0; });

  if (all_exp_one) {
    const int k = compute_k(inst);
    p.k = k;
    p.I_matches_k = static_cast<int>(I.size()) == k;
    const int c = 2 + std::min(2, k);
    const std::string why = "|G| = 2, all exponents 1, k = " + std::to_string(k);
    p.half_factorial = k == 0 ? Tri::True : Tri::False;
    p.half_factorial_provenance = why + ": half-factorial iff k = 0";
    p.c = IntPrediction::exact(c, why + ": c = 2 + min{2,k}");
    p.cmon = IntPrediction::exact(c, why + ": cmon = c");
    p.rho = {Rational(c, 2), Rational(c, 2), false, why + ": rho = c/2"};
    std::set<int> d;
    for (int x = 1; x <= c - 2; ++x) d.insert(x);
    p.delta.exact = d;
    p.delta.provenance = why + ": delta = [1, c-2]";
  } else if (I.empty() && J.empty()) {
    const std::string why = "|G| = 2, I and J empty";
    p.half_factorial = Tri::True;
    p.half_factorial_provenance = why;
    p.c = IntPrediction::exact(2, why + ": c = 2");
    p.cmon = IntPrediction::exact(2, "half-factorial: cmon = c");
    p.rho = {Rational(1), Rational(1), false, "half-factorial"};
    p.delta.exact = std::set<int>{};
    p.delta.provenance = "half-factorial";
  } else if (I.empty()) {
    const std::string why = "|G| = 2, I empty, J nonempty";
    p.c = IntPrediction::between(2, 3, why + ": c in {2,3}");
    p.cmon = IntPrediction::between(2, std::nullopt, "cmon >= c");
    p.rho = {Rational(1), Rational(2), false, "|G| = 2: rho <= 2"};
    p.delta.subset_of = std::set<int>{1};
    p.delta.provenance = why + ": delta subset of {1}";
  } else if (I.size() == 1) {
    const std::string why = "|G| = 2, #I = 1";
    p.half_factorial = Tri::False;
    p.half_factorial_provenance = why + ": rho >= 3/2";
    p.c = IntPrediction::exact(3, why + ": c = 3");
    p.cmon = s == 0 ? IntPrediction::exact(3, why + ", s = 0: cmon = c")
                    : IntPrediction::between(3, std::nullopt, "cmon >= c");
    p.rho = s == 0 ? RationalPrediction{Rational(3, 2), Rational(3, 2), false, why + ", s = 0: rho = 3/2"}
                   : RationalPrediction{Rational(3, 2), Rational(2), false, why + ": 3/2 <= rho <= 2"};
    p.delta.exact = std::set<int>{1};
    p.delta.provenance = why + ": delta = {1}";
  } else {
    const std::string why = "|G| = 2, #I >= 2";
    p.half_factorial = Tri::False;
    p.half_factorial_provenance = why + ": rho = 2";
    p.c = IntPrediction::exact(4, why + ": c = 4");
    p.cmon = s == 0 ? IntPrediction::exact(4, why + ", s = 0: cmon = c")
                    : IntPrediction::between(4, std::nullopt, "cmon >= c");
    p.rho = {Rational(2), Rational(2), false, why + ": rho = 2"};
    p.delta.exact = std::set<int>{1, 2};
    p.delta.provenance = why + ": delta = {1,2}";
  }
  if (s == 0 && all_p_trivial) {
    p.t_is_2_iff_hf = true;
    p.t_provenance = "|G| = 2, s = 0, all iota(p_i) = 0: half-factorial iff t = 2";
  }
  return p;
}

/// Half-factoriality criterion for quadratic-order data (all exponents 1):
/// |G| <= 2, half-factorial components, and every unit group in ker ι.
inline bool check_hf_criterion_quadratic(const InstanceSpec& inst) {
  for (const auto& c : inst.components())
    if (c.primary.exponent() != 1) throw UnsupportedInstance("criterion needs every component of exponent 1");
  if (inst.group().order() > 2) return false;
  for (std::size_t i = 0; i < inst.num_components(); ++i) {
    if (!is_half_factorial(inst.primary(i))) return false;
    for (std::size_t u = 0; u < inst.primary(i).unit_count(); ++u)
      if (inst.unit_class(i, u) != 0) return false;
  }
  return true;
}

}  // namespace factorix
