#pragma once

// T-block monoids B(G, T, ι) ⊂ F(G) × D_1 × ... × D_r: pairs (S, t) with
// σ(S) + ι(t) = 0, where ι is additive and ι_i(p_i^n u) = n ι(p_i) + ι_i(u).

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "factorix/abelian.hpp"
#include "factorix/error.hpp"
#include "factorix/factorization.hpp"
#include "factorix/primary.hpp"

namespace factorix {

inline constexpr int kDefaultDegreeCap = 8;
inline constexpr std::size_t kMaxEnumeratedElements = 2'000'000;

struct ComponentSpec {
  PrimaryMonoidSpec primary;
  GroupElement iota_p;
  std::vector<GroupElement> iota_units;  // image of each cyclic generator of the unit group
};

/// An element of F(G) × D_1 × ... × D_r. `free[x]` is the multiplicity of
/// the group element with index x.
struct AmbientElement {
  std::vector<int> free;
  std::vector<PrimaryElement> parts;

  int free_length() const {
    int n = 0;
    for (int c : free) n += c;
    return n;
  }
  int degree() const {
    int n = free_length();
    for (const auto& p : parts) n += p.valuation;
    return n;
  }

  friend bool operator==(const AmbientElement&, const AmbientElement&) = default;
  /// (degree, free part, parts)
  friend std::strong_ordering operator<=>(const AmbientElement& a, const AmbientElement& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    if (auto c = a.free <=> b.free; c != 0) return c;
    return a.parts <=> b.parts;
  }
};

using BElement = AmbientElement;

struct AmbientElementHash {
  std::size_t operator()(const AmbientElement& a) const {
    std::size_t h = 14695981039346656037ULL;
    auto mix = [&h](std::size_t v) { h = (h ^ v) * 1099511628211ULL; };
    for (int c : a.free) mix(static_cast<std::size_t>(c));
    for (const auto& p : a.parts) {
      mix(static_cast<std::size_t>(p.valuation) + 0x9e37);
      mix(p.unit);
    }
    return h;
  }
};

class InstanceSpec {
 public:
  /// Validates homomorphism data and component ordering (non-decreasing k).
  InstanceSpec(FiniteAbelianGroup group, std::vector<ComponentSpec> components)
      : group_(std::move(group)), components_(std::move(components)) {
    for (std::size_t i = 0; i < components_.size(); ++i) {
      const auto& c = components_[i];
      const std::string at = "components[" + std::to_string(i) + "]";
      if (!group_.contains(c.iota_p)) throw ValidationError(at + ".iota_p", "not an element of " + group_.str());
      const auto& V = c.primary.units();
      if (c.iota_units.size() != V.num_factors())
        throw ValidationError(at + ".iota_units", "expected " + std::to_string(V.num_factors()) +
                                                      " generator images, got " + std::to_string(c.iota_units.size()));
      for (std::size_t j = 0; j < c.iota_units.size(); ++j) {
        const std::string here = at + ".iota_units[" + std::to_string(j) + "]";
        if (!group_.contains(c.iota_units[j])) throw ValidationError(here, "not an element of " + group_.str());
        if (V.moduli()[j] % order_of(group_, c.iota_units[j]) != 0)
          throw ValidationError(here, "order of the image does not divide " + std::to_string(V.moduli()[j]) +
                                          "; not a homomorphism");
      }
      if (i > 0 && c.primary.exponent() < components_[i - 1].primary.exponent())
        throw ValidationError(at + ".k", "components must be listed by non-decreasing exponent");
    }
    unit_class_.resize(components_.size());
    p_class_.resize(components_.size());
    for (std::size_t i = 0; i < components_.size(); ++i) {
      const auto& c = components_[i];
      const auto& V = c.primary.units();
      p_class_[i] = group_.index_of(c.iota_p);
      p_order_.push_back(static_cast<int>(order_of(group_, c.iota_p)));
      auto& table = unit_class_[i];
      table.resize(V.order());
      for (std::size_t u = 0; u < V.order(); ++u) {
        auto e = V.at(u);
        std::vector<long long> acc(group_.num_factors(), 0);
        for (std::size_t j = 0; j < e.residues.size(); ++j)
          for (std::size_t t = 0; t < acc.size(); ++t)
            acc[t] += static_cast<long long>(e.residues[j]) * c.iota_units[j].residues[t];
        table[u] = group_.index_of(group_.element(acc));
      }
    }
  }

  const FiniteAbelianGroup& group() const { return group_; }
  const std::vector<ComponentSpec>& components() const { return components_; }
  std::size_t num_components() const { return components_.size(); }
  const PrimaryMonoidSpec& primary(std::size_t i) const { return components_.at(i).primary; }

  /// Index (in G) of ι_i(u) for a unit index u.
  std::size_t unit_class(std::size_t i, std::size_t u) const { return unit_class_.at(i).at(u); }
  std::size_t p_class(std::size_t i) const { return p_class_.at(i); }

  /// Index of ι_i(p_i^n u).
  std::size_t iota_index(std::size_t i, const PrimaryElement& e) const {
    std::size_t acc = unit_class(i, e.unit);
    const int steps = e.valuation % p_order_[i];
    for (int n = 0; n < steps; ++n) acc = group_.add_index(acc, p_class_[i]);
    return acc;
  }

  AmbientElement identity() const {
    return {std::vector<int>(group_.order(), 0), std::vector<PrimaryElement>(components_.size())};
  }

  /// Number of components with k = 1.
  std::size_t r() const {
    return static_cast<std::size_t>(std::count_if(components_.begin(), components_.end(),
                                                  [](const ComponentSpec& c) { return c.primary.exponent() == 1; }));
  }
  std::size_t s() const { return components_.size() - r(); }

  std::string element_str(const AmbientElement& a) const {
    std::string out;
    auto append = [&out](const std::string& piece) {
      if (!out.empty()) out += " ";
      out += piece;
    };
    for (std::size_t x = 0; x < a.free.size(); ++x)
      if (a.free[x] > 0) append("(" + group_.at(x).str() + ")" + (a.free[x] > 1 ? "^" + std::to_string(a.free[x]) : ""));
    for (std::size_t i = 0; i < a.parts.size(); ++i) {
      const auto& p = a.parts[i];
      if (p.valuation == 0) continue;
      std::string piece = "p" + std::to_string(i + 1);
      if (p.valuation > 1) piece += "^" + std::to_string(p.valuation);
      if (p.unit != 0) piece += "[" + primary(i).units().at(p.unit).str() + "]";
      append(piece);
    }
    return out.empty() ? "1" : out;
  }

 private:
  FiniteAbelianGroup group_;
  std::vector<ComponentSpec> components_;
  std::vector<std::vector<std::size_t>> unit_class_;
  std::vector<std::size_t> p_class_;
  std::vector<int> p_order_;
};

inline GroupElement iota_value(const InstanceSpec& inst, std::size_t i, const PrimaryElement& e) {
  if (i >= inst.num_components()) throw StructuralError("component index out of range");
  if (!inst.primary(i).contains(e)) throw StructuralError("element is not a member of component " + std::to_string(i));
  return inst.group().at(inst.iota_index(i, e));
}

/// Shape and membership checks for an ambient element.
inline void require_ambient(const InstanceSpec& inst, const AmbientElement& a) {
  if (a.free.size() != inst.group().order()) throw StructuralError("free part has wrong size");
  if (a.parts.size() != inst.num_components()) throw StructuralError("wrong number of component parts");
  for (int c : a.free)
    if (c < 0) throw StructuralError("negative multiplicity in free part");
  for (std::size_t i = 0; i < a.parts.size(); ++i)
    if (!inst.primary(i).contains(a.parts[i]))
      throw StructuralError("part " + std::to_string(i) + " is not a member of its component");
}

/// Index of σ(S) + ι(t).
inline std::size_t block_class(const InstanceSpec& inst, const AmbientElement& a) {
  const auto& G = inst.group();
  std::size_t acc = 0;
  for (std::size_t x = 0; x < a.free.size(); ++x)
    for (int m = 0; m < a.free[x]; ++m) acc = G.add_index(acc, x);
  for (std::size_t i = 0; i < a.parts.size(); ++i) acc = G.add_index(acc, inst.iota_index(i, a.parts[i]));
  return acc;
}

inline bool is_block(const InstanceSpec& inst, const AmbientElement& a) {
  require_ambient(inst, a);
  return block_class(inst, a) == 0;
}

/// Adapter for the factorization engine. Quotients of blocks by blocks are
/// blocks, so divide() checks only ambient divisibility.
class BlockMonoid {
 public:
  using element_type = AmbientElement;
  using element_hash = AmbientElementHash;

  explicit BlockMonoid(const InstanceSpec& inst) : inst_(&inst) {}

  const InstanceSpec& instance() const { return *inst_; }
  AmbientElement identity() const { return inst_->identity(); }

  AmbientElement multiply(const AmbientElement& a, const AmbientElement& b) const {
    AmbientElement out = a;
    for (std::size_t x = 0; x < out.free.size(); ++x) out.free[x] += b.free[x];
    for (std::size_t i = 0; i < out.parts.size(); ++i) {
      out.parts[i].valuation += b.parts[i].valuation;
      out.parts[i].unit = inst_->primary(i).units().add_index(a.parts[i].unit, b.parts[i].unit);
    }
    return out;
  }

  /// Ambient quotient b/a, if a | b in D.
  std::optional<AmbientElement> divide(const AmbientElement& b, const AmbientElement& a) const {
    // reject without allocating first; most trial divisions fail
    for (std::size_t x = 0; x < b.free.size(); ++x)
      if (b.free[x] < a.free[x]) return std::nullopt;
    for (std::size_t i = 0; i < b.parts.size(); ++i)
      if (b.parts[i].valuation < a.parts[i].valuation) return std::nullopt;
    AmbientElement out = b;
    for (std::size_t x = 0; x < out.free.size(); ++x) {
      out.free[x] -= a.free[x];
      if (out.free[x] < 0) return std::nullopt;
    }
    for (std::size_t i = 0; i < out.parts.size(); ++i) {
      const auto& spec = inst_->primary(i);
      out.parts[i].valuation -= a.parts[i].valuation;
      out.parts[i].unit = spec.units().add_index(b.parts[i].unit, spec.units().negate_index(a.parts[i].unit));
      if (!spec.contains(out.parts[i])) return std::nullopt;
    }
    return out;
  }

 private:
  const InstanceSpec* inst_;
};

/// a | b in B: the ambient quotient exists and is again a block.
inline bool divides(const InstanceSpec& inst, const BElement& a, const BElement& b) {
  auto q = BlockMonoid(inst).divide(b, a);
  return q && block_class(inst, *q) == 0;
}

/// Every block of degree <= max_degree, sorted by (degree, free, parts).
/// Blocks divisible by the prime 0 are skipped unless `include_zero`.
inline std::vector<BElement> enumerate_B(const InstanceSpec& inst, int max_degree, bool include_zero = true,
                                         std::size_t cap = kMaxEnumeratedElements) {
  if (max_degree < 0) return {};
  const auto& G = inst.group();
  const std::size_t n = G.order();
  const std::size_t r = inst.num_components();
  std::vector<BElement> out;
  AmbientElement cur = inst.identity();
  const std::size_t first_letter = include_zero ? 0 : 1;
  std::vector<int> letter_order(n);
  for (std::size_t x = 0; x < n; ++x) letter_order[x] = static_cast<int>(order_of(G, G.at(x)));

  // free part: multisets of exactly `len` letters from index `from` on, with running class
  std::function<void(std::size_t, int, std::size_t)> fill_free = [&](std::size_t from, int len, std::size_t cls) {
    if (len == 0) {
      if (cls == 0) {
        if (out.size() >= cap) throw ResourceError("more than " + std::to_string(cap) + " elements below the degree cap");
        out.push_back(cur);
      }
      return;
    }
    if (from >= n) return;
    if (from == n - 1) {
      std::size_t c = cls;
      for (int m = 0; m < len % letter_order[from]; ++m) c = G.add_index(c, from);
      if (c != 0) return;
      cur.free[from] = len;
      fill_free(n, 0, 0);
      cur.free[from] = 0;
      return;
    }
    std::size_t c = cls;
    for (int m = 0; m <= len; ++m) {
      cur.free[from] = m;
      fill_free(from + 1, len - m, c);
      c = G.add_index(c, from);
    }
    cur.free[from] = 0;
  };

  std::function<void(std::size_t, int, std::size_t)> fill_parts = [&](std::size_t i, int budget, std::size_t cls) {
    if (i == r) {
      if (first_letter >= n) {
        if (cls == 0) fill_free(n, 0, 0);
        return;
      }
      for (int len = 0; len <= budget; ++len) fill_free(first_letter, len, cls);
      return;
    }
    const auto& spec = inst.primary(i);
    for (int v = 0; v <= budget; ++v)
      for (auto u : spec.level(v)) {
        cur.parts[i] = {v, u};
        fill_parts(i + 1, budget - v, G.add_index(cls, inst.iota_index(i, cur.parts[i])));
      }
    cur.parts[i] = {};
  };

  fill_parts(0, max_degree, 0);
  std::sort(out.begin(), out.end());
  return out;
}

/// Largest valuation among the atoms of the components (0 with no components).
inline int max_component_atom_valuation(const InstanceSpec& inst) {
  int top = 0;
  for (const auto& c : inst.components())
    for (const auto& a : atoms(c.primary)) top = std::max(top, a.valuation);
  return top;
}

/// Atoms of B by exhaustive search. Block atoms are products of at most D(G)
/// ambient atoms, so degree D(G) times the largest component atom valuation
/// bounds the search (and D(G) alone covers the free letters).
inline std::vector<BElement> atoms_generic(const InstanceSpec& inst) {
  const int D = davenport_constant(inst.group());
  const int bound = D * std::max(1, max_component_atom_valuation(inst));
  auto candidates = enumerate_B(inst, bound, true);
  BlockMonoid m(inst);
  std::vector<BElement> found;
  for (const auto& a : candidates) {
    if (a.degree() == 0) continue;
    // in degree order: a is reducible iff an atom of smaller degree divides it
    bool reducible = std::any_of(found.begin(), found.end(), [&](const BElement& b) {
      return b.degree() < a.degree() && m.divide(a, b).has_value();
    });
    if (!reducible) found.push_back(a);
  }
  return found;
}

/// Closed-form atom list for |G| = 2 with half-factorial components:
///   0, g^2, p_i ε (ι = 0), p_i ε g (ι = g),
///   p_i^2 ε with ι(ε) = 0 and ε ∉ F_i^2, F_i = { ε' ∈ U_1 : ι(ε') = ι(p_i) },
///   p_i ε_i p_j ε_j (i < j) with ι(p_i ε_i) = ι(p_j ε_j) = g.
inline std::vector<BElement> atoms_closed_form(const InstanceSpec& inst) {
  const auto& G = inst.group();
  if (G.order() != 2) throw UnsupportedInstance("closed-form atoms need |G| = 2, got " + G.str());
  for (std::size_t i = 0; i < inst.num_components(); ++i)
    if (!is_half_factorial(inst.primary(i)))
      throw UnsupportedInstance("closed-form atoms need half-factorial components; component " + std::to_string(i) +
                                " is not");
  std::set<BElement> out;
  const auto id = inst.identity();
  auto zero = id;
  zero.free[0] = 1;
  out.insert(zero);
  auto gg = id;
  gg.free[1] = 2;
  out.insert(gg);

  for (std::size_t i = 0; i < inst.num_components(); ++i) {
    const auto& spec = inst.primary(i);
    const auto& V = spec.units();
    const auto U1 = spec.level(1);
    for (auto e : U1) {
      auto a = id;
      a.parts[i] = {1, e};
      if (inst.iota_index(i, a.parts[i]) == 1) a.free[1] = 1;
      out.insert(a);
    }
    std::vector<char> F2(V.order(), 0);
    for (auto e1 : U1)
      for (auto e2 : U1)
        if (inst.unit_class(i, e1) == inst.p_class(i) && inst.unit_class(i, e2) == inst.p_class(i))
          F2[V.add_index(e1, e2)] = 1;
    for (auto e : spec.level(2)) {
      if (inst.unit_class(i, e) != 0 || F2[e]) continue;
      auto a = id;
      a.parts[i] = {2, e};
      out.insert(a);
    }
    for (std::size_t j = i + 1; j < inst.num_components(); ++j)
      for (auto ei : U1) {
        if (inst.iota_index(i, {1, ei}) != 1) continue;
        for (auto ej : inst.primary(j).level(1)) {
          if (inst.iota_index(j, {1, ej}) != 1) continue;
          auto a = id;
          a.parts[i] = {1, ei};
          a.parts[j] = {1, ej};
          out.insert(a);
        }
      }
  }
  return {out.begin(), out.end()};
}

/// The element 0 ∈ B (a prime).
inline BElement zero_letter(const InstanceSpec& inst) {
  auto z = inst.identity();
  z.free[0] = 1;
  return z;
}

}  // namespace factorix
