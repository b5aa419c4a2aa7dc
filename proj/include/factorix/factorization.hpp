#pragma once

// The factorization engine: sets of factorizations over a fixed atom table,
// and the per-element invariants built on them (lengths, distances,
// catenary / monotone catenary / tame degrees, R-chains).
//
// The engine is generic over any reduced atomic monoid that can multiply and
// test divisibility; the primary monoids and the T-block monoids both plug in.

#include <algorithm>
#include <bit>
#include <climits>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <tuple>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "factorix/error.hpp"
#include "factorix/rational.hpp"

namespace factorix {

using AtomId = std::uint32_t;

template <class M>
concept AtomicMonoid = requires(const M& m, const typename M::element_type& a) {
  typename M::element_hash;
  { m.identity() } -> std::convertible_to<typename M::element_type>;
  { m.multiply(a, a) } -> std::convertible_to<typename M::element_type>;
  // divide(b, a) is b/a when a | b inside the monoid
  { m.divide(a, a) } -> std::same_as<std::optional<typename M::element_type>>;
  { a == a } -> std::convertible_to<bool>;
};

/// A multiset of atom ids, stored sorted with repetition.
class Factorization {
 public:
  Factorization() = default;
  explicit Factorization(std::vector<AtomId> ids) : ids_(std::move(ids)) { std::sort(ids_.begin(), ids_.end()); }

  /// |z|
  std::size_t length() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  const std::vector<AtomId>& atoms() const { return ids_; }

  int multiplicity(AtomId u) const {
    auto [lo, hi] = std::equal_range(ids_.begin(), ids_.end(), u);
    return static_cast<int>(hi - lo);
  }
  bool contains(AtomId u) const { return std::binary_search(ids_.begin(), ids_.end(), u); }

  std::map<AtomId, int> counts() const {
    std::map<AtomId, int> out;
    for (auto u : ids_) ++out[u];
    return out;
  }

  /// Size of the multiset gcd.
  friend std::size_t common_length(const Factorization& a, const Factorization& b) {
    std::size_t i = 0, j = 0, common = 0;
    while (i < a.ids_.size() && j < b.ids_.size()) {
      if (a.ids_[i] == b.ids_[j]) {
        ++common;
        ++i;
        ++j;
      } else if (a.ids_[i] < b.ids_[j]) {
        ++i;
      } else {
        ++j;
      }
    }
    return common;
  }

  friend Factorization gcd(const Factorization& a, const Factorization& b) {
    std::vector<AtomId> out;
    std::set_intersection(a.ids_.begin(), a.ids_.end(), b.ids_.begin(), b.ids_.end(), std::back_inserter(out));
    return Factorization(std::move(out));
  }

  /// Multiset difference a / b; callers guarantee b | a.
  friend Factorization operator/(const Factorization& a, const Factorization& b) {
    std::vector<AtomId> out;
    std::set_difference(a.ids_.begin(), a.ids_.end(), b.ids_.begin(), b.ids_.end(), std::back_inserter(out));
    return Factorization(std::move(out));
  }

  friend Factorization operator*(const Factorization& a, const Factorization& b) {
    std::vector<AtomId> out;
    std::merge(a.ids_.begin(), a.ids_.end(), b.ids_.begin(), b.ids_.end(), std::back_inserter(out));
    return Factorization(std::move(out));
  }

  bool divides(const Factorization& other) const {
    return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
  }

  friend bool operator==(const Factorization&, const Factorization&) = default;
  friend auto operator<=>(const Factorization&, const Factorization&) = default;

  std::string str() const {
    if (ids_.empty()) return "1";
    std::string out;
    for (const auto& [u, m] : counts()) {
      if (!out.empty()) out += "*";
      out += "a" + std::to_string(u);
      if (m > 1) out += "^" + std::to_string(m);
    }
    return out;
  }

 private:
  std::vector<AtomId> ids_;
};

/// d(z, z') = max{|z/gcd|, |z'/gcd|}
inline int distance(const Factorization& z, const Factorization& w) {
  auto common = common_length(z, w);
  return static_cast<int>(std::max(z.length() - common, w.length() - common));
}

/// A pair (x, y) of factorizations of the same element.
struct RelationPair {
  Factorization left;
  Factorization right;

  friend bool operator==(const RelationPair&, const RelationPair&) = default;
  friend auto operator<=>(const RelationPair&, const RelationPair&) = default;
};

/// Memoized factorization sets over a fixed, ordered atom table.
template <AtomicMonoid M>
class Factorizer {
 public:
  using Element = typename M::element_type;

  Factorizer(M monoid, std::vector<Element> atoms) : monoid_(std::move(monoid)), atoms_(std::move(atoms)) {}

  const M& monoid() const { return monoid_; }
  const std::vector<Element>& atoms() const { return atoms_; }

  std::optional<AtomId> atom_id(const Element& a) const {
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      if (atoms_[i] == a) return static_cast<AtomId>(i);
    return std::nullopt;
  }

  /// π(z)
  Element evaluate(const Factorization& z) const {
    Element out = monoid_.identity();
    for (auto u : z.atoms()) out = monoid_.multiply(out, atoms_.at(u));
    return out;
  }

  /// Z(a), sorted. Recursion uses non-decreasing atom ids and is memoized on
  /// (element, smallest admissible id).
  std::vector<Factorization> factorizations(const Element& a) { return factorization_set(a); }

  /// Z(a) by reference; stays valid until clear_memo().
  const std::vector<Factorization>& factorization_set(const Element& a) {
    if (auto it = sets_.find(a); it != sets_.end()) return it->second;
    const auto& suffixes = suffixes_from(a, 0);
    std::vector<Factorization> out;
    out.reserve(suffixes.size());
    for (const auto& s : suffixes) out.emplace_back(s);
    std::sort(out.begin(), out.end());
    return sets_.emplace(a, std::move(out)).first->second;
  }

  std::size_t memo_size() const { return memo_.size(); }
  void clear_memo() {
    memo_.clear();
    sets_.clear();
  }

 private:
  using Suffixes = std::vector<std::vector<AtomId>>;

  struct Key {
    Element element;
    AtomId first;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return typename M::element_hash{}(k.element) * 31 + k.first;
    }
  };

  const Suffixes& suffixes_from(const Element& a, AtomId first) {
    Key key{a, first};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Suffixes out;
    if (a == monoid_.identity()) {
      out.emplace_back();
    } else {
      for (AtomId j = first; j < atoms_.size(); ++j) {
        auto rest = monoid_.divide(a, atoms_[j]);
        if (!rest) continue;
        const auto& tails = suffixes_from(*rest, j);
        for (const auto& tail : tails) {
          std::vector<AtomId> z;
          z.reserve(tail.size() + 1);
          z.push_back(j);
          z.insert(z.end(), tail.begin(), tail.end());
          out.push_back(std::move(z));
        }
      }
    }
    return memo_.emplace(std::move(key), std::move(out)).first->second;
  }

  M monoid_;
  std::vector<Element> atoms_;
  std::unordered_map<Key, Suffixes, KeyHash> memo_;
  std::unordered_map<Element, std::vector<Factorization>, typename M::element_hash> sets_;
};

// ---------------------------------------------------------------------------
// Per-element invariants. All take Z(a) as materialized by a Factorizer.

inline std::set<int> length_set(const std::vector<Factorization>& Z) {
  std::set<int> out;
  for (const auto& z : Z) out.insert(static_cast<int>(z.length()));
  return out;
}

/// Successive gaps of L(a).
inline std::set<int> delta_of_element(const std::vector<Factorization>& Z) {
  std::set<int> out;
  auto L = length_set(Z);
  for (auto it = L.begin(); it != L.end() && std::next(it) != L.end(); ++it) out.insert(*std::next(it) - *it);
  return out;
}

/// max L / min L, with 0/0 = 1.
inline Rational elasticity_of_element(const std::vector<Factorization>& Z) {
  if (Z.empty()) throw std::invalid_argument("elasticity of an element without factorizations");
  auto L = length_set(Z);
  if (*L.begin() == 0) return Rational(1);
  return Rational(*L.rbegin(), *L.begin());
}

namespace detail {

/// Each factorization as a bitset with one bit per (atom, copy) slot, so
/// |gcd(z, z')| is the popcount of an AND.
struct SlotBits {
  std::size_t words = 1;
  std::vector<std::uint64_t> bits;

  explicit SlotBits(const std::vector<Factorization>& Z) {
    std::map<AtomId, int> copies;
    for (const auto& z : Z)
      for (const auto& [u, m] : z.counts()) copies[u] = std::max(copies[u], m);
    std::map<AtomId, std::size_t> offset;
    std::size_t slots = 0;
    for (const auto& [u, m] : copies) {
      offset[u] = slots;
      slots += static_cast<std::size_t>(m);
    }
    words = std::max<std::size_t>(1, (slots + 63) / 64);
    bits.assign(Z.size() * words, 0);
    for (std::size_t i = 0; i < Z.size(); ++i)
      for (const auto& [u, m] : Z[i].counts())
        for (int c = 0; c < m; ++c) {
          auto slot = offset[u] + static_cast<std::size_t>(c);
          bits[i * words + slot / 64] |= std::uint64_t{1} << (slot % 64);
        }
  }

  int common(std::size_t i, std::size_t j) const {
    int n = 0;
    for (std::size_t w = 0; w < words; ++w) n += std::popcount(bits[i * words + w] & bits[j * words + w]);
    return n;
  }
};

/// Symmetric distance matrix, row-major.
inline std::vector<std::uint16_t> distance_matrix(const std::vector<Factorization>& Z) {
  const std::size_t n = Z.size();
  SlotBits sb(Z);
  std::vector<std::uint16_t> d(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto li = static_cast<int>(Z[i].length());
    for (std::size_t j = i + 1; j < n; ++j) {
      const int dist = std::max(li, static_cast<int>(Z[j].length())) - sb.common(i, j);
      d[i * n + j] = d[j * n + i] = static_cast<std::uint16_t>(dist);
    }
  }
  return d;
}

/// Is the graph on Z with edges d <= 2 connected? Distances are computed on
/// the fly, so no matrix is built.
inline bool connected_at_two(const std::vector<Factorization>& Z) {
  SlotBits sb(Z);
  std::vector<std::size_t> unvisited(Z.size() - 1);
  std::iota(unvisited.begin(), unvisited.end(), 1);
  std::vector<std::size_t> queue{0};
  while (!queue.empty() && !unvisited.empty()) {
    auto i = queue.back();
    queue.pop_back();
    const auto li = static_cast<int>(Z[i].length());
    for (std::size_t k = 0; k < unvisited.size();) {
      auto j = unvisited[k];
      if (std::max(li, static_cast<int>(Z[j].length())) - sb.common(i, j) <= 2) {
        queue.push_back(j);
        unvisited[k] = unvisited.back();
        unvisited.pop_back();
      } else {
        ++k;
      }
    }
  }
  return unvisited.empty();
}

/// Bottleneck of a minimum spanning tree over `nodes` (Prim, dense).
inline int bottleneck_spanning(const std::vector<std::size_t>& nodes, const std::vector<std::uint16_t>& d, std::size_t n) {
  if (nodes.size() <= 1) return 0;
  std::vector<int> best(nodes.size(), INT32_MAX);
  std::vector<char> in_tree(nodes.size(), 0);
  best[0] = 0;
  int bottleneck = 0;
  for (std::size_t step = 0; step < nodes.size(); ++step) {
    std::size_t pick = nodes.size();
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (!in_tree[i] && (pick == nodes.size() || best[i] < best[pick])) pick = i;
    in_tree[pick] = 1;
    bottleneck = std::max(bottleneck, best[pick]);
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (!in_tree[i]) best[i] = std::min<int>(best[i], d[nodes[pick] * n + nodes[i]]);
  }
  return bottleneck;
}

}  // namespace detail

namespace detail {

inline int monotone_from_matrix(const std::vector<Factorization>& Z, const std::vector<std::uint16_t>& d) {
  const std::size_t n = Z.size();
  std::map<std::size_t, std::vector<std::size_t>> levels;
  for (std::size_t i = 0; i < n; ++i) levels[Z[i].length()].push_back(i);

  int result = 0;
  std::vector<const std::vector<std::size_t>*> order;
  for (const auto& [len, nodes] : levels) {
    result = std::max(result, bottleneck_spanning(nodes, d, n));
    order.push_back(&nodes);
  }
  const std::size_t m = order.size();
  if (m == 1) return result;
  // jump[a][b]: cheapest single step from level a up to level b
  std::vector<int> jump(m * m, INT32_MAX);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      int best = INT32_MAX;
      for (auto i : *order[a])
        for (auto j : *order[b]) best = std::min<int>(best, d[i * n + j]);
      jump[a * m + b] = best;
    }
  // minimax over increasing level sequences
  std::vector<int> reach(m * m, INT32_MAX);
  for (std::size_t a = m; a-- > 0;)
    for (std::size_t b = a + 1; b < m; ++b) {
      int best = jump[a * m + b];
      for (std::size_t c = a + 1; c < b; ++c) best = std::min(best, std::max(jump[a * m + c], reach[c * m + b]));
      reach[a * m + b] = best;
      result = std::max(result, best);
    }
  return result;
}

}  // namespace detail

/// c(a): the smallest N for which the graph on Z(a) with edges d <= N is
/// connected, i.e. the bottleneck of a minimum spanning tree.
inline int catenary_of_element(const std::vector<Factorization>& Z) {
  if (Z.size() <= 1) return 0;
  auto d = detail::distance_matrix(Z);
  std::vector<std::size_t> all(Z.size());
  std::iota(all.begin(), all.end(), 0);
  return detail::bottleneck_spanning(all, d, Z.size());
}

/// c_mon(a). A monotone chain between two factorizations of equal length
/// never leaves that length, so every length level must be connected on its
/// own; across levels only the best single jump between each pair of levels
/// matters, combined by a minimax path over increasing levels.
inline int monotone_catenary_of_element(const std::vector<Factorization>& Z) {
  if (Z.size() <= 1) return 0;
  return detail::monotone_from_matrix(Z, detail::distance_matrix(Z));
}

/// (c(a), c_mon(a)) sharing one distance matrix. Distinct factorizations are
/// at distance >= 2, so a single-length Z(a) connected at 2 needs no matrix.
inline std::pair<int, int> chain_degrees(const std::vector<Factorization>& Z) {
  if (Z.size() <= 1) return {0, 0};
  const auto first_len = Z.front().length();
  const bool one_level = std::all_of(Z.begin(), Z.end(), [&](const Factorization& z) { return z.length() == first_len; });
  if (one_level && detail::connected_at_two(Z)) return {2, 2};
  auto d = detail::distance_matrix(Z);
  std::vector<std::size_t> all(Z.size());
  std::iota(all.begin(), all.end(), 0);
  const int c = detail::bottleneck_spanning(all, d, Z.size());
  return {c, one_level ? c : detail::monotone_from_matrix(Z, d)};
}

/// t(a, u) given Z(a): 0 if no factorization contains u, otherwise the worst
/// case over z of the distance to the nearest factorization containing u.
inline int tame_of_pair(const std::vector<Factorization>& Z, AtomId u) {
  std::vector<std::size_t> with_u;
  for (std::size_t i = 0; i < Z.size(); ++i)
    if (Z[i].contains(u)) with_u.push_back(i);
  if (with_u.empty()) return 0;
  int worst = 0;
  for (const auto& z : Z) {
    if (z.contains(u)) continue;
    int best = INT32_MAX;
    for (auto j : with_u) best = std::min(best, distance(z, Z[j]));
    worst = std::max(worst, best);
  }
  return worst;
}

/// max over atoms u of t(a, u); atoms that occur in no factorization give 0.
inline int tame_of_element(const std::vector<Factorization>& Z) {
  std::set<AtomId> seen;
  for (const auto& z : Z) seen.insert(z.atoms().begin(), z.atoms().end());
  int worst = 0;
  for (auto u : seen) worst = std::max(worst, tame_of_pair(Z, u));
  return worst;
}

/// ≈ (or ≈_eq when `equal_length`) classes inside Z(a): union-find over
/// pairs sharing an atom. Classes are listed by smallest member index.
inline std::vector<std::vector<std::size_t>> r_chain_classes(const std::vector<Factorization>& Z, bool equal_length) {
  std::vector<std::size_t> parent(Z.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < Z.size(); ++i)
    for (std::size_t j = i + 1; j < Z.size(); ++j) {
      if (equal_length && Z[i].length() != Z[j].length()) continue;
      if (common_length(Z[i], Z[j]) == 0) continue;
      parent[find(i)] = find(j);
    }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < Z.size(); ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

/// Is there a chain x = z_0, ..., z_n = y inside Z(a) with gcd(z_{i-1}, z_i) != 1
/// and |z_{i-1}| <= |z_i|?  `x` and `y` index into Z.
inline bool monotone_r_chain_exists(const std::vector<Factorization>& Z, std::size_t x, std::size_t y) {
  if (x >= Z.size() || y >= Z.size()) throw std::out_of_range("factorization index");
  if (Z[x].length() > Z[y].length()) throw std::invalid_argument("monotone R-chain needs |x| <= |y|");
  if (x == y) return true;
  std::vector<char> seen(Z.size(), 0);
  std::vector<std::size_t> stack{x};
  seen[x] = 1;
  while (!stack.empty()) {
    auto cur = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < Z.size(); ++j) {
      if (seen[j] || Z[j].length() < Z[cur].length() || Z[j].length() > Z[y].length()) continue;
      if (common_length(Z[cur], Z[j]) == 0) continue;
      if (j == y) return true;
      seen[j] = 1;
      stack.push_back(j);
    }
  }
  return false;
}

/// Is the coprime pair (x, y) of factorizations of one element an atom of
/// the monoid of relations?  Brute force over all sub-pairs (x', y') with
/// x' | x, y' | y and π(x') = π(y').
template <AtomicMonoid M>
bool is_relation_atom(const Factorizer<M>& f, const RelationPair& rel) {
  const auto& x = rel.left.atoms();
  const auto& y = rel.right.atoms();
  if (x.size() > 16 || y.size() > 16) throw ResourceError("relation too long for exhaustive atom test");
  // products of all sub-multisets of y, keyed by mask; equal atoms are treated
  // positionally which only repeats work
  std::vector<typename M::element_type> right_products(std::size_t{1} << y.size(), f.monoid().identity());
  for (std::size_t mask = 1; mask < right_products.size(); ++mask) {
    std::size_t low = static_cast<std::size_t>(std::countr_zero(mask));
    right_products[mask] = f.monoid().multiply(right_products[mask & (mask - 1)], f.atoms()[y[low]]);
  }
  const std::size_t full_x = (std::size_t{1} << x.size()) - 1;
  const std::size_t full_y = right_products.size() - 1;
  std::vector<typename M::element_type> left_products(full_x + 1, f.monoid().identity());
  for (std::size_t mask = 1; mask <= full_x; ++mask) {
    std::size_t low = static_cast<std::size_t>(std::countr_zero(mask));
    left_products[mask] = f.monoid().multiply(left_products[mask & (mask - 1)], f.atoms()[x[low]]);
  }
  for (std::size_t mx = 0; mx <= full_x; ++mx)
    for (std::size_t my = 0; my <= full_y; ++my) {
      if ((mx == 0 && my == 0) || (mx == full_x && my == full_y)) continue;
      if (left_products[mx] == right_products[my]) return false;
    }
  return true;
}

/// Atoms (x, y) of the monoid of relations with |x| <= |y| <= max_right_len,
/// collected from the factorization sets of the given elements. Equal-length
/// pairs are listed once, with x < y.
template <AtomicMonoid M>
std::set<RelationPair> relation_atoms(Factorizer<M>& f, const std::vector<typename M::element_type>& elements,
                                      int max_right_len) {
  std::set<RelationPair> out;
  for (const auto& a : elements) {
    auto Z = f.factorizations(a);
    for (std::size_t i = 0; i < Z.size(); ++i)
      for (std::size_t j = 0; j < Z.size(); ++j) {
        if (i == j) continue;
        const auto& x = Z[i];
        const auto& y = Z[j];
        if (x.length() > y.length() || static_cast<int>(y.length()) > max_right_len) continue;
        if (x.length() == y.length() && !(x < y)) continue;
        if (common_length(x, y) != 0) continue;
        RelationPair rel{x, y};
        if (is_relation_atom(f, rel)) out.insert(std::move(rel));
      }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Monoid-level aggregation over a bounded list of elements.

template <class Element>
struct ElementAnalysis {
  Element element;
  std::vector<Factorization> factorizations;
  std::set<int> lengths;
  std::set<int> delta;
  Rational rho;
  int catenary = 0;
  int monotone_catenary = 0;
  std::optional<int> tame;
};

template <AtomicMonoid M>
ElementAnalysis<typename M::element_type> analyze_element(Factorizer<M>& f, const typename M::element_type& a,
                                                          bool with_tame) {
  ElementAnalysis<typename M::element_type> out{a, f.factorizations(a), {}, {}, Rational(1), 0, 0, std::nullopt};
  if (out.factorizations.empty()) throw std::logic_error("element without factorization: atom table incomplete");
  out.lengths = length_set(out.factorizations);
  out.delta = delta_of_element(out.factorizations);
  out.rho = elasticity_of_element(out.factorizations);
  std::tie(out.catenary, out.monotone_catenary) = chain_degrees(out.factorizations);
  if (with_tame) out.tame = tame_of_element(out.factorizations);
  return out;
}

/// Suprema over a finite element list. Values are certified lower bounds for
/// the monoid; `witness_*` holds an element attaining each maximum.
template <class Element>
struct MonoidInvariants {
  std::size_t elements = 0;
  int catenary = 0;
  int monotone_catenary = 0;
  std::optional<int> tame;
  Rational rho{1};
  std::set<int> delta;
  bool half_factorial = true;
  std::optional<Element> witness_catenary;
  std::optional<Element> witness_monotone;
  std::optional<Element> witness_tame;
  std::optional<Element> witness_rho;
  std::optional<Element> witness_length;  // first element with |L| > 1

  std::optional<int> min_delta() const {
    if (delta.empty()) return std::nullopt;
    return *delta.begin();
  }
};

template <AtomicMonoid M>
MonoidInvariants<typename M::element_type> brute_force_invariants(Factorizer<M>& f,
                                                                  const std::vector<typename M::element_type>& elements,
                                                                  bool with_tame) {
  MonoidInvariants<typename M::element_type> out;
  if (with_tame) out.tame = 0;
  for (const auto& a : elements) {
    auto r = analyze_element(f, a, with_tame);
    ++out.elements;
    if (r.catenary > out.catenary) {
      out.catenary = r.catenary;
      out.witness_catenary = a;
    }
    if (r.monotone_catenary > out.monotone_catenary) {
      out.monotone_catenary = r.monotone_catenary;
      out.witness_monotone = a;
    }
    if (with_tame && *r.tame > *out.tame) {
      out.tame = r.tame;
      out.witness_tame = a;
    }
    if (r.rho > out.rho) {
      out.rho = r.rho;
      out.witness_rho = a;
    }
    out.delta.insert(r.delta.begin(), r.delta.end());
    if (r.lengths.size() > 1 && out.half_factorial) {
      out.half_factorial = false;
      out.witness_length = a;
    }
  }
  return out;
}

}  // namespace factorix
