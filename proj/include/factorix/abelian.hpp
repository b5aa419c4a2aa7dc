#pragma once

// Finite abelian groups written as direct sums of cyclic groups, sequences
// over them, and the zero-sum machinery (minimal zero-sum sequences and the
// Davenport constant).

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "factorix/error.hpp"

namespace factorix {

/// Largest group order accepted anywhere in the library.
inline constexpr std::size_t kMaxGroupOrder = 1'000'000;
/// Default cap on |G| for the exhaustive Davenport search.
inline constexpr std::size_t kDefaultDavenportCap = 64;

/// Element of ⊕ Z/n_j as a vector of reduced residues.
struct GroupElement {
  std::vector<int> residues;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;

  /// "r0,r1,..." (empty string for the trivial group with no moduli).
  std::string str() const {
    std::string out;
    for (std::size_t j = 0; j < residues.size(); ++j) {
      if (j) out += ',';
      out += std::to_string(residues[j]);
    }
    return out;
  }
};

class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;

  explicit FiniteAbelianGroup(std::vector<int> moduli) : moduli_(std::move(moduli)) {
    std::size_t order = 1;
    for (int n : moduli_) {
      if (n < 1) throw StructuralError("cyclic factor order must be >= 1, got " + std::to_string(n));
      order *= static_cast<std::size_t>(n);
      if (order > kMaxGroupOrder)
        throw ResourceError("group order exceeds " + std::to_string(kMaxGroupOrder));
    }
    order_ = order;
  }

  const std::vector<int>& moduli() const { return moduli_; }
  std::size_t order() const { return order_; }
  std::size_t num_factors() const { return moduli_.size(); }
  bool is_trivial() const { return order_ == 1; }

  GroupElement zero() const { return GroupElement{std::vector<int>(moduli_.size(), 0)}; }

  bool contains(const GroupElement& a) const {
    if (a.residues.size() != moduli_.size()) return false;
    for (std::size_t j = 0; j < moduli_.size(); ++j)
      if (a.residues[j] < 0 || a.residues[j] >= moduli_[j]) return false;
    return true;
  }

  /// Builds an element from arbitrary integers, reducing each modulo n_j.
  GroupElement element(const std::vector<long long>& values) const {
    if (values.size() != moduli_.size())
      throw StructuralError("element has " + std::to_string(values.size()) + " residues, group has " +
                            std::to_string(moduli_.size()) + " cyclic factors");
    GroupElement out;
    out.residues.resize(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) {
      long long r = values[j] % moduli_[j];
      out.residues[j] = static_cast<int>(r < 0 ? r + moduli_[j] : r);
    }
    return out;
  }

  /// Position of `a` in the lexicographic enumeration (first factor most significant).
  std::size_t index_of(const GroupElement& a) const {
    require(a);
    std::size_t idx = 0;
    for (std::size_t j = 0; j < moduli_.size(); ++j) idx = idx * moduli_[j] + a.residues[j];
    return idx;
  }

  GroupElement at(std::size_t idx) const {
    if (idx >= order_) throw StructuralError("element index out of range");
    GroupElement out;
    out.residues.assign(moduli_.size(), 0);
    for (std::size_t j = moduli_.size(); j-- > 0;) {
      out.residues[j] = static_cast<int>(idx % moduli_[j]);
      idx /= moduli_[j];
    }
    return out;
  }

  /// Index arithmetic, used on hot paths where elements are kept as ranks.
  std::size_t add_index(std::size_t a, std::size_t b) const {
    std::size_t out = 0, scale = 1;
    for (std::size_t j = moduli_.size(); j-- > 0;) {
      const auto n = static_cast<std::size_t>(moduli_[j]);
      out += ((a % n + b % n) % n) * scale;
      a /= n;
      b /= n;
      scale *= n;
    }
    return out;
  }

  std::size_t negate_index(std::size_t a) const {
    std::size_t out = 0, scale = 1;
    for (std::size_t j = moduli_.size(); j-- > 0;) {
      const auto n = static_cast<std::size_t>(moduli_[j]);
      out += ((n - a % n) % n) * scale;
      a /= n;
      scale *= n;
    }
    return out;
  }

  void require(const GroupElement& a) const {
    if (!contains(a)) throw StructuralError("element (" + a.str() + ") does not belong to the group");
  }

  friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
    return a.moduli_ == b.moduli_;
  }

  std::string str() const {
    if (moduli_.empty()) return "C1";
    std::string out;
    for (std::size_t j = 0; j < moduli_.size(); ++j) {
      if (j) out += "+";
      out += "C" + std::to_string(moduli_[j]);
    }
    return out;
  }

 private:
  std::vector<int> moduli_;
  std::size_t order_ = 1;
};

inline GroupElement add(const FiniteAbelianGroup& G, const GroupElement& a, const GroupElement& b) {
  G.require(a);
  G.require(b);
  GroupElement out = a;
  for (std::size_t j = 0; j < out.residues.size(); ++j)
    out.residues[j] = (a.residues[j] + b.residues[j]) % G.moduli()[j];
  return out;
}

inline GroupElement negate(const FiniteAbelianGroup& G, const GroupElement& a) {
  G.require(a);
  GroupElement out = a;
  for (std::size_t j = 0; j < out.residues.size(); ++j)
    out.residues[j] = (G.moduli()[j] - a.residues[j]) % G.moduli()[j];
  return out;
}

inline GroupElement multiple(const FiniteAbelianGroup& G, const GroupElement& a, long long n) {
  G.require(a);
  std::vector<long long> values(a.residues.begin(), a.residues.end());
  for (auto& v : values) v *= n;
  return G.element(values);
}

inline long long order_of(const FiniteAbelianGroup& G, const GroupElement& a) {
  G.require(a);
  long long ord = 1;
  for (std::size_t j = 0; j < a.residues.size(); ++j) {
    long long n = G.moduli()[j];
    long long o = n / std::gcd<long long>(n, a.residues[j]);
    ord = std::lcm(ord, o);
  }
  return ord;
}

/// Finite multiset of group elements. Zero multiplicities are never stored.
class GSequence {
 public:
  GSequence() = default;
  explicit GSequence(const std::vector<GroupElement>& letters) {
    for (const auto& g : letters) insert(g);
  }

  void insert(const GroupElement& g, int multiplicity = 1) {
    if (multiplicity < 0) throw StructuralError("negative multiplicity");
    if (multiplicity == 0) return;
    counts_[g] += multiplicity;
  }

  int multiplicity(const GroupElement& g) const {
    auto it = counts_.find(g);
    return it == counts_.end() ? 0 : it->second;
  }

  /// |S|
  std::size_t length() const {
    std::size_t n = 0;
    for (const auto& [g, m] : counts_) n += static_cast<std::size_t>(m);
    return n;
  }

  bool empty() const { return counts_.empty(); }
  const std::map<GroupElement, int>& counts() const { return counts_; }

  std::vector<GroupElement> letters() const {
    std::vector<GroupElement> out;
    for (const auto& [g, m] : counts_) out.insert(out.end(), static_cast<std::size_t>(m), g);
    return out;
  }

  bool divides(const GSequence& other) const {
    for (const auto& [g, m] : counts_)
      if (other.multiplicity(g) < m) return false;
    return true;
  }

  friend GSequence operator*(GSequence a, const GSequence& b) {
    for (const auto& [g, m] : b.counts_) a.insert(g, m);
    return a;
  }

  friend bool operator==(const GSequence&, const GSequence&) = default;
  friend auto operator<=>(const GSequence&, const GSequence&) = default;

  std::string str() const {
    if (counts_.empty()) return "1";
    std::string out;
    for (const auto& [g, m] : counts_) {
      if (!out.empty()) out += "*";
      out += "(" + g.str() + ")";
      if (m > 1) out += "^" + std::to_string(m);
    }
    return out;
  }

 private:
  std::map<GroupElement, int> counts_;
};

/// σ(S): sum of all letters with multiplicity.
inline GroupElement sigma(const FiniteAbelianGroup& G, const GSequence& S) {
  std::vector<long long> acc(G.num_factors(), 0);
  for (const auto& [g, m] : S.counts()) {
    G.require(g);
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += static_cast<long long>(g.residues[j]) * m;
  }
  return G.element(acc);
}

/// All elements in lexicographic order on residues.
inline std::vector<GroupElement> enumerate_elements(const FiniteAbelianGroup& G,
                                                    std::size_t cap = kMaxGroupOrder) {
  if (G.order() > cap)
    throw ResourceError("group " + G.str() + " has order " + std::to_string(G.order()) +
                        " above the cap " + std::to_string(cap));
  std::vector<GroupElement> out;
  out.reserve(G.order());
  for (std::size_t i = 0; i < G.order(); ++i) out.push_back(G.at(i));
  return out;
}

namespace detail {

/// Dense bitset over group-element indices; used for subset-sum sets.
struct SumSet {
  std::vector<std::uint64_t> words;

  explicit SumSet(std::size_t bits = 0) : words((bits + 63) / 64, 0) {}
  bool test(std::size_t i) const { return (words[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i) { words[i / 64] |= std::uint64_t{1} << (i % 64); }
  friend bool operator==(const SumSet&, const SumSet&) = default;
};

struct SumSetHash {
  std::size_t operator()(const SumSet& s) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto w : s.words) h = (h ^ w) * 1099511628211ULL + (h >> 29);
    return static_cast<std::size_t>(h);
  }
};

class AdditionTable {
 public:
  explicit AdditionTable(const FiniteAbelianGroup& G) : n_(G.order()), table_(n_ * n_) {
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b) table_[a * n_ + b] = static_cast<std::uint32_t>(G.add_index(a, b));
  }
  std::size_t operator()(std::size_t a, std::size_t b) const { return table_[a * n_ + b]; }

 private:
  std::size_t n_;
  std::vector<std::uint32_t> table_;
};

/// Σ(S·h) = Σ(S) ∪ {h} ∪ (Σ(S) + h)
inline SumSet extend_sums(const SumSet& sums, std::size_t h, std::size_t n, const AdditionTable& add) {
  SumSet out = sums;
  out.set(h);
  for (std::size_t x = 0; x < n; ++x)
    if (sums.test(x)) out.set(add(x, h));
  return out;
}

}  // namespace detail

/// Minimal zero-sum sequences over `G0` of length at most `max_len`.
///
/// Every minimal zero-sum sequence other than `0` has the form S·(−σ(S)) with S
/// nonempty and zero-sum free, so the search walks zero-sum free sorted
/// multisets and closes each one off.
inline std::set<GSequence> minimal_zero_sum_sequences(const FiniteAbelianGroup& G,
                                                      const std::set<GroupElement>& G0, int max_len) {
  std::set<GSequence> out;
  if (max_len < 1 || G0.empty()) return out;
  const std::size_t n = G.order();
  detail::AdditionTable add(G);
  std::vector<char> allowed(n, 0);
  for (const auto& g : G0) allowed[G.index_of(g)] = 1;
  if (allowed[0]) out.insert(GSequence({G.zero()}));

  std::vector<std::size_t> letters;
  for (std::size_t i = 1; i < n; ++i)
    if (allowed[i]) letters.push_back(i);

  std::vector<std::size_t> current;
  // recursion over zero-sum free sorted multisets of length <= max_len - 1
  auto recurse = [&](auto&& self, const detail::SumSet& sums, std::size_t sum, std::size_t first) -> void {
    if (!current.empty()) {
      std::size_t closing = G.negate_index(sum);
      if (allowed[closing]) {
        GSequence seq;
        for (auto i : current) seq.insert(G.at(i));
        seq.insert(G.at(closing));
        out.insert(std::move(seq));
      }
    }
    if (static_cast<int>(current.size()) + 1 >= max_len) return;
    for (std::size_t li = first; li < letters.size(); ++li) {
      std::size_t h = letters[li];
      auto next = detail::extend_sums(sums, h, n, add);
      if (next.test(0)) continue;
      current.push_back(h);
      self(self, next, add(sum, h), li);
      current.pop_back();
    }
  };
  recurse(recurse, detail::SumSet(n), 0, 0);
  return out;
}

/// Maximal length of a zero-sum free sequence over G, by breadth-first
/// extension of sorted zero-sum free multisets. States are deduplicated on
/// their subset-sum set, keeping the smallest last letter (it dominates).
inline int max_zero_sum_free_length(const FiniteAbelianGroup& G, std::size_t cap = kDefaultDavenportCap) {
  if (G.order() > cap)
    throw ResourceError("Davenport search refused: |G| = " + std::to_string(G.order()) + " exceeds cap " +
                        std::to_string(cap));
  const std::size_t n = G.order();
  if (n == 1) return 0;
  detail::AdditionTable add(G);
  std::unordered_map<detail::SumSet, std::size_t, detail::SumSetHash> layer;
  layer.emplace(detail::SumSet(n), 1);
  int length = 0;
  while (true) {
    std::unordered_map<detail::SumSet, std::size_t, detail::SumSetHash> next;
    for (const auto& [sums, first] : layer) {
      for (std::size_t h = first; h < n; ++h) {
        auto extended = detail::extend_sums(sums, h, n, add);
        if (extended.test(0)) continue;
        auto [it, inserted] = next.emplace(std::move(extended), h);
        if (!inserted && h < it->second) it->second = h;
      }
    }
    if (next.empty()) return length;
    ++length;
    layer = std::move(next);
  }
}

/// D(G) = 1 + maximal length of a zero-sum free sequence.
inline int davenport_constant(const FiniteAbelianGroup& G, std::size_t cap = kDefaultDavenportCap) {
  return 1 + max_zero_sum_free_length(G, cap);
}

}  // namespace factorix
