#pragma once

// Shapes of relation atoms over |G| = 2. Atoms of B(C2, T, ι) fall into
// families (the prime 0, g^2, p_i ε, p_i ε g, p_i^2 ε, p_i ε_i p_j ε_j) and
// the relation atoms of small type are matched against fifteen shapes by
// family and component.

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "factorix/error.hpp"
#include "factorix/factorization.hpp"
#include "factorix/tblock.hpp"

namespace factorix {

enum class AtomFamily {
  Zero,      // the prime 0
  GG,        // g^2
  Plain,     // p_i ε with ι = 0
  WithG,     // p_i ε g
  Square,    // p_i^2 ε
  Mixed,     // p_i ε_i p_j ε_j, i < j
  Other,
};

struct AtomShape {
  AtomFamily family = AtomFamily::Other;
  int i = -1;
  int j = -1;

  friend bool operator==(const AtomShape&, const AtomShape&) = default;
  friend auto operator<=>(const AtomShape&, const AtomShape&) = default;
};

inline AtomShape atom_shape(const InstanceSpec& inst, const BElement& a) {
  std::vector<int> comps;
  int total_val = 0;
  for (std::size_t c = 0; c < a.parts.size(); ++c)
    if (a.parts[c].valuation > 0) {
      comps.push_back(static_cast<int>(c));
      total_val += a.parts[c].valuation;
    }
  const int free_len = a.free_length();
  const int g_count = a.free.size() > 1 ? a.free[1] : 0;
  if (comps.empty()) {
    if (free_len == 1 && a.free[0] == 1) return {AtomFamily::Zero};
    if (g_count == 2 && free_len == 2) return {AtomFamily::GG};
    return {};
  }
  if (a.free[0] != 0) return {};
  if (comps.size() == 1 && total_val == 1) {
    if (g_count == 0) return {AtomFamily::Plain, comps[0]};
    if (g_count == 1) return {AtomFamily::WithG, comps[0]};
  }
  if (comps.size() == 1 && total_val == 2 && g_count == 0) return {AtomFamily::Square, comps[0]};
  if (comps.size() == 2 && total_val == 2 && g_count == 0) return {AtomFamily::Mixed, comps[0], comps[1]};
  (void)inst;
  return {};
}

namespace detail {

// Pattern letters: family plus which index variables (0 = i, 1 = j) fill the
// component slots.
struct ShapePattern {
  AtomFamily family;
  int a = -1;
  int b = -1;
};

struct CharacterPattern {
  int character;
  std::vector<ShapePattern> left;
  std::vector<ShapePattern> right;
  bool needs_two_indices;
  bool needs_exponent_two;  // component i must have k_i = 2
};

inline const std::vector<CharacterPattern>& character_patterns() {
  using F = AtomFamily;
  static const std::vector<CharacterPattern> table = {
      {1, {{F::GG}, {F::Mixed, 0, 1}}, {{F::WithG, 0}, {F::WithG, 1}}, true, false},
      {2, {{F::Mixed, 0, 1}, {F::Mixed, 0, 1}}, {{F::Square, 0}, {F::Square, 1}}, true, false},
      {3, {{F::GG}, {F::Square, 0}}, {{F::WithG, 0}, {F::WithG, 0}}, false, false},
      {4, {{F::Plain, 0}, {F::Plain, 0}}, {{F::Plain, 0}, {F::Plain, 0}}, false, false},
      {5, {{F::WithG, 0}, {F::WithG, 0}}, {{F::WithG, 0}, {F::WithG, 0}}, false, false},
      {6, {{F::Plain, 0}, {F::WithG, 0}}, {{F::Plain, 0}, {F::WithG, 0}}, false, false},
      {7, {{F::WithG, 0}, {F::WithG, 0}}, {{F::Plain, 0}, {F::Plain, 0}, {F::GG}}, false, false},
      {8, {{F::Mixed, 0, 1}, {F::Mixed, 0, 1}}, {{F::Plain, 0}, {F::Plain, 0}, {F::Square, 1}}, true, false},
      {9, {{F::Mixed, 0, 1}, {F::Mixed, 0, 1}}, {{F::Plain, 0}, {F::Plain, 0}, {F::Plain, 1}, {F::Plain, 1}}, true, false},
      {10, {{F::Plain, 0}, {F::Plain, 0}, {F::Plain, 0}}, {{F::Plain, 0}, {F::Plain, 0}, {F::Plain, 0}}, false, true},
      {11, {{F::Plain, 0}, {F::Plain, 0}, {F::WithG, 0}}, {{F::Plain, 0}, {F::Plain, 0}, {F::WithG, 0}}, false, true},
      {12, {{F::Square, 0}, {F::Plain, 0}}, {{F::Plain, 0}, {F::Plain, 0}, {F::Plain, 0}}, false, true},
      {13, {{F::Square, 0}, {F::WithG, 0}}, {{F::Plain, 0}, {F::Plain, 0}, {F::WithG, 0}}, false, true},
      {14, {{F::Square, 0}, {F::Plain, 0}}, {{F::Square, 0}, {F::Plain, 0}}, false, true},
      {15, {{F::Square, 0}, {F::WithG, 0}}, {{F::Square, 0}, {F::WithG, 0}}, false, true},
  };
  return table;
}

inline std::vector<AtomShape> instantiate(const std::vector<ShapePattern>& side, const std::array<int, 2>& idx) {
  std::vector<AtomShape> out;
  for (const auto& p : side) {
    AtomShape s{p.family};
    if (p.a >= 0) s.i = idx[static_cast<std::size_t>(p.a)];
    if (p.b >= 0) s.j = idx[static_cast<std::size_t>(p.b)];
    if (s.family == AtomFamily::Mixed && s.i > s.j) std::swap(s.i, s.j);
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Character in [1, 15] of a relation atom over |G| = 2, or nullopt when no
/// shape matches. Only family and component pattern are compared; the pair
/// is assumed to be a relation atom.
inline std::optional<int> classify_character(const InstanceSpec& inst, const Factorizer<BlockMonoid>& f,
                                             const RelationPair& rel) {
  if (inst.group().order() != 2) throw UnsupportedInstance("relation characters need |G| = 2");
  if (rel.left == rel.right) return std::nullopt;
  auto shapes_of = [&](const Factorization& z) {
    std::vector<AtomShape> out;
    for (auto u : z.atoms()) out.push_back(atom_shape(inst, f.atoms().at(u)));
    std::sort(out.begin(), out.end());
    return out;
  };
  const auto left = shapes_of(rel.left);
  const auto right = shapes_of(rel.right);
  const int r = static_cast<int>(inst.num_components());
  for (const auto& pat : detail::character_patterns()) {
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        if (pat.needs_two_indices ? i == j : j != 0) continue;
        if (pat.needs_exponent_two && inst.primary(static_cast<std::size_t>(i)).exponent() != 2) continue;
        const std::array<int, 2> idx{i, j};
        auto pl = detail::instantiate(pat.left, idx);
        auto pr = detail::instantiate(pat.right, idx);
        if ((pl == left && pr == right) || (pl == right && pr == left)) return pat.character;
      }
  }
  return std::nullopt;
}

}  // namespace factorix
