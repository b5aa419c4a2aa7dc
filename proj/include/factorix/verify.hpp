#pragma once

// Brute force against closed forms: monoid-level invariants of B' (blocks
// not divisible by the prime 0) up to a degree cap, bound checks, chain
// checks, and the canned scenario suite.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "factorix/abelian.hpp"
#include "factorix/characters.hpp"
#include "factorix/factorization.hpp"
#include "factorix/json_io.hpp"
#include "factorix/predict.hpp"
#include "factorix/primary.hpp"
#include "factorix/rational.hpp"
#include "factorix/tblock.hpp"

namespace factorix {

struct BruteInvariants {
  int cap = 0;
  bool include_zero = false;
  std::size_t atom_count = 0;
  MonoidInvariants<BElement> inv;
  /// sup min L_B(a) / min L_D(a) over the same elements
  Rational rho_relative{1};
  std::optional<BElement> witness_relative;
};

namespace detail {

/// min L_D(a) with D = F(G) × D_1 × ... × D_r.
class AmbientMinLength {
 public:
  explicit AmbientMinLength(const InstanceSpec& inst) : inst_(&inst) {
    for (const auto& c : inst.components()) {
      const bool hf = is_half_factorial(c.primary);
      half_factorial_.push_back(hf);
      factorizers_.emplace_back(PrimaryMonoid(c.primary), atoms(c.primary));
    }
  }

  int operator()(const BElement& a) {
    int n = a.free_length();
    for (std::size_t i = 0; i < a.parts.size(); ++i) {
      if (half_factorial_[i]) {
        n += a.parts[i].valuation;
      } else {
        auto L = length_set(factorizers_[i].factorizations(a.parts[i]));
        n += *L.begin();
      }
    }
    return n;
  }

 private:
  const InstanceSpec* inst_;
  std::vector<bool> half_factorial_;
  std::vector<Factorizer<PrimaryMonoid>> factorizers_;
};

}  // namespace detail

/// Suprema of per-element invariants over every block of degree <= cap.
inline BruteInvariants brute_invariants(const InstanceSpec& inst, int cap, bool include_zero = false,
                                        bool with_tame = true) {
  if (cap < 1) throw std::invalid_argument("degree cap must be >= 1");
  Factorizer<BlockMonoid> f(BlockMonoid(inst), atoms_generic(inst));
  auto elements = enumerate_B(inst, cap, include_zero);
  BruteInvariants out;
  out.cap = cap;
  out.include_zero = include_zero;
  out.atom_count = f.atoms().size();
  out.inv = brute_force_invariants(f, elements, with_tame);
  detail::AmbientMinLength min_d(inst);
  for (const auto& a : elements) {
    if (a.degree() == 0) continue;
    auto L = length_set(f.factorization_set(a));
    Rational q(*L.begin(), min_d(a));
    if (q > out.rho_relative) {
      out.rho_relative = q;
      out.witness_relative = a;
    }
  }
  return out;
}

enum class Verdict { Match, WithinInterval, Violation, NotApplicable };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Match: return "match";
    case Verdict::WithinInterval: return "within-interval";
    case Verdict::Violation: return "violation";
    default: return "not-applicable";
  }
}

struct FieldCheck {
  std::string name;
  std::string predicted;
  std::string brute;
  Verdict verdict = Verdict::NotApplicable;
  std::string note;
};

struct BoundResult {
  std::string name;
  std::string lhs;
  std::string rhs;
  bool holds = true;
};

struct VerificationReport {
  std::string scenario;
  std::string label;
  std::string digest;
  int cap = 0;
  std::vector<FieldCheck> fields;
  std::vector<BoundResult> bounds;
  std::vector<std::string> findings;  // discrepancies that are not verdicts
  std::optional<std::string> witness;
  double seconds = 0;

  bool has_violation() const {
    return std::any_of(fields.begin(), fields.end(), [](const FieldCheck& f) { return f.verdict == Verdict::Violation; });
  }
  bool bounds_hold() const {
    return std::all_of(bounds.begin(), bounds.end(), [](const BoundResult& b) { return b.holds; });
  }
};

// ---------------------------------------------------------------------------
// Field comparison.
//
// B' carries one free letter per class; an order has infinitely many primes
// per class, which only adds distance-2 rewrites. So a catenary degree below
// 2 on B' means c(H) lies in [c(B'), 2], and values >= 2 transfer exactly.

inline FieldCheck compare_degree(const std::string& name, const IntPrediction& p, int brute) {
  FieldCheck out{name, p.str(), std::to_string(brute), Verdict::NotApplicable, p.provenance};
  if (!p.known()) return out;
  if (p.is_exact() && brute == *p.lo) {
    out.verdict = Verdict::Match;
  } else if (brute < 2 && p.contains(2) && (!p.lo || brute <= *p.lo)) {
    out.verdict = Verdict::WithinInterval;
    out.note = "one letter per class: true value in [" + std::to_string(brute) + ",2]";
  } else if (!p.is_exact() && p.contains(brute)) {
    out.verdict = Verdict::WithinInterval;
  } else {
    out.verdict = Verdict::Violation;
  }
  return out;
}

inline FieldCheck compare_rho(const RationalPrediction& p, const Rational& brute) {
  FieldCheck out{"rho", p.str(), brute.str(), Verdict::NotApplicable, p.provenance};
  if (!p.known()) return out;
  if (p.is_exact())
    out.verdict = brute == *p.lo ? Verdict::Match : Verdict::Violation;
  else
    out.verdict = p.contains(brute) ? Verdict::WithinInterval : Verdict::Violation;
  return out;
}

inline std::string set_str(const std::set<int>& s) {
  std::string out = "{";
  for (int x : s) out += (out.size() > 1 ? "," : "") + std::to_string(x);
  return out + "}";
}

inline FieldCheck compare_delta(const DeltaPrediction& p, const std::set<int>& brute) {
  FieldCheck out{"delta", p.str(), set_str(brute), Verdict::NotApplicable, p.provenance};
  if (!p.known()) return out;
  if (p.exact)
    out.verdict = brute == *p.exact ? Verdict::Match : Verdict::Violation;
  else
    out.verdict = p.contains(brute) ? Verdict::WithinInterval : Verdict::Violation;
  return out;
}

inline FieldCheck compare_hf(Tri p, const std::string& why, bool brute) {
  FieldCheck out{"half_factorial", to_string(p), brute ? "true" : "false", Verdict::NotApplicable, why};
  if (p == Tri::Unknown) return out;
  out.verdict = (p == Tri::True) == brute ? Verdict::Match : Verdict::Violation;
  return out;
}

/// Under the t-criterion: t = 2 on half-factorial non-factorial B', t > 2 otherwise.
inline FieldCheck compare_tame(const Prediction& p, const BruteInvariants& b) {
  FieldCheck out{"t", "?", b.inv.tame ? std::to_string(*b.inv.tame) : "?", Verdict::NotApplicable, p.t_provenance};
  if (!p.t_is_2_iff_hf || !b.inv.tame) return out;
  const int t = *b.inv.tame;
  if (b.inv.half_factorial) {
    out.predicted = "2";
    if (t == 2)
      out.verdict = Verdict::Match;
    else if (t < 2 && b.inv.catenary == 0) {
      out.verdict = Verdict::WithinInterval;
      out.note = "B' is factorial at this cap";
    } else
      out.verdict = Verdict::Violation;
  } else {
    out.predicted = ">2";
    out.verdict = t > 2 ? Verdict::Match : Verdict::Violation;
  }
  return out;
}

inline std::vector<FieldCheck> compare(const Prediction& p, const BruteInvariants& b) {
  std::vector<FieldCheck> out;
  out.push_back(compare_hf(p.half_factorial, p.half_factorial_provenance, b.inv.half_factorial));
  out.push_back(compare_degree("c", p.c, b.inv.catenary));
  out.push_back(compare_degree("cmon", p.cmon, b.inv.monotone_catenary));
  out.push_back(compare_rho(p.rho, b.inv.rho));
  out.push_back(compare_delta(p.delta, b.inv.delta));
  out.push_back(compare_tame(p, b));
  if (p.I_matches_k) {
    FieldCheck f{"#I = k", std::to_string(*p.k), std::to_string(p.I->size()),
                 *p.I_matches_k ? Verdict::Match : Verdict::Violation, "set computation vs full-image count"};
    out.push_back(f);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bounds.

struct LocalSummary {
  int exponent = 1;
  bool half_factorial = true;
  LocalInvariants local;
};

inline std::vector<LocalSummary> local_summaries(const InstanceSpec& inst) {
  std::vector<LocalSummary> out;
  for (const auto& c : inst.components())
    out.push_back({c.primary.exponent(), is_half_factorial(c.primary),
                   local_invariants(c.primary, default_local_valuation(c.primary))});
  return out;
}

inline std::vector<BoundResult> check_bounds(const InstanceSpec& inst, const BruteInvariants& b) {
  std::vector<BoundResult> out;
  const int D = davenport_constant(inst.group());
  const auto locals = local_summaries(inst);
  Rational rho_T(1);
  int c_D = 0;
  for (const auto& l : locals) {
    rho_T = std::max(rho_T, l.local.rho);
    c_D = std::max(c_D, l.local.catenary);
  }
  const int c = b.inv.catenary;
  const Rational D_rho(D * rho_T.num(), rho_T.den());
  out.push_back({"rho(H) <= D(G) rho(T)", b.inv.rho.str(), D_rho.str(), !(D_rho < b.inv.rho)});
  out.push_back({"rho(H,D) <= 1", b.rho_relative.str(), "1", !(Rational(1) < b.rho_relative)});
  const int cbound = std::max(((D + 1) * c_D) / 2, D * D);
  out.push_back({"c(H) <= max{floor((D+1)/2 c(D)), D^2}", std::to_string(c), std::to_string(cbound), c <= cbound});
  if (inst.group().order() >= 3) {
    out.push_back({"c(H) >= 3 (|G| >= 3)", std::to_string(c), "3", c >= 3});
    out.push_back({"c(H) <= D(G)^2 (|G| >= 3)", std::to_string(c), std::to_string(D * D), c <= D * D});
    auto md = b.inv.min_delta();
    out.push_back({"min delta = 1 (|G| >= 3)", md ? std::to_string(*md) : "none", "1", md && *md == 1});
    out.push_back({"rho(H) > 1 (|G| >= 3)", b.inv.rho.str(), "1", Rational(1) < b.inv.rho});
  }
  if (inst.group().order() == 2) {
    out.push_back({"c(H) <= 4 (|G| = 2)", std::to_string(c), "4", c <= 4});
    out.push_back({"rho(H) <= 2 (|G| = 2)", b.inv.rho.str(), "2", !(Rational(2) < b.inv.rho)});
  }
  if (c >= 2 && !b.inv.delta.empty()) {
    int max_delta = *b.inv.delta.rbegin();
    out.push_back({"max delta <= c - 2", std::to_string(max_delta), std::to_string(c - 2), max_delta <= c - 2});
  }
  for (std::size_t i = 0; i < locals.size(); ++i) {
    const auto& l = locals[i];
    if (!l.half_factorial) continue;
    const auto tag = " (component " + std::to_string(i) + ")";
    out.push_back({"c(D_i) <= t(D_i)" + tag, std::to_string(l.local.catenary), std::to_string(l.local.tame),
                   l.local.catenary <= l.local.tame});
    out.push_back({"t(D_i) <= k_i + 1" + tag, std::to_string(l.local.tame), std::to_string(l.exponent + 1),
                   l.local.tame <= l.exponent + 1});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Chains.

struct ChainCheck {
  std::size_t pairs_checked = 0;
  std::vector<std::string> counterexamples;
};

/// Every pair (x, y) of factorizations of one element with |x| <= |y| and
/// min_len <= |y| <= max_len must be joined by a monotone R-chain.
inline ChainCheck check_chain_lemma(const InstanceSpec& inst, int cap, int min_len = 5, int max_len = 6,
                                    std::size_t max_reported = 5) {
  Factorizer<BlockMonoid> f(BlockMonoid(inst), atoms_generic(inst));
  ChainCheck out;
  for (const auto& a : enumerate_B(inst, cap, false)) {
    auto Z = f.factorizations(a);
    if (Z.size() < 2) continue;
    for (std::size_t y = 0; y < Z.size(); ++y) {
      const int ly = static_cast<int>(Z[y].length());
      if (ly < min_len || ly > max_len) continue;
      for (std::size_t x = 0; x < Z.size(); ++x) {
        if (x == y || Z[x].length() > Z[y].length()) continue;
        ++out.pairs_checked;
        if (!monotone_r_chain_exists(Z, x, y) && out.counterexamples.size() < max_reported)
          out.counterexamples.push_back(inst.element_str(a) + ": " + Z[x].str() + " -> " + Z[y].str());
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Instance construction helpers shared by the suite and the tests.

/// Type (1,1) component: k = 1, U_1 = all units.
inline PrimaryMonoidSpec exponent_one_spec(const FiniteAbelianGroup& units) {
  return PrimaryMonoidSpec(units, 1, {{units.zero()}});
}

/// Half-factorial spec with U_l = (U_1)^l; the exponent is the least l with
/// (U_1)^l = all units.
inline PrimaryMonoidSpec spec_from_generators(const FiniteAbelianGroup& units, const std::set<GroupElement>& U1) {
  std::vector<std::set<GroupElement>> levels{{units.zero()}};
  std::set<GroupElement> power{units.zero()};
  for (int l = 1;; ++l) {
    std::set<GroupElement> next;
    for (const auto& a : power)
      for (const auto& b : U1) next.insert(add(units, a, b));
    if (next.size() == units.order()) break;
    if (l > static_cast<int>(units.order()) + 1)
      throw std::invalid_argument("powers of U_1 never cover the unit group");
    levels.push_back(next);
    power = std::move(next);
  }
  return PrimaryMonoidSpec(units, static_cast<int>(levels.size()), levels);
}

/// Units C_k ⊕ C_k, U_1 = {0, e1, e2}.
inline PrimaryMonoidSpec sharp_example_spec(int k) {
  FiniteAbelianGroup V({k, k});
  return spec_from_generators(V, {V.zero(), V.element({1, 0}), V.element({0, 1})});
}

/// The k = 1 instance over C2: units C2 = {1, u}, ι(u) = g, ι(p) = g.
inline InstanceSpec k1_instance() {
  FiniteAbelianGroup C2({2});
  return InstanceSpec(C2, {ComponentSpec{exponent_one_spec(C2), C2.element({1}), {C2.element({1})}}});
}

/// Homomorphisms from `units` to G, as generator images.
inline std::vector<std::vector<GroupElement>> homomorphisms(const FiniteAbelianGroup& units,
                                                           const FiniteAbelianGroup& G) {
  std::vector<std::vector<GroupElement>> out{{}};
  for (int n : units.moduli()) {
    std::vector<std::vector<GroupElement>> next;
    for (const auto& prefix : out)
      for (const auto& g : enumerate_elements(G))
        if (n % order_of(G, g) == 0) {
          auto v = prefix;
          v.push_back(g);
          next.push_back(std::move(v));
        }
    out = std::move(next);
  }
  return out;
}

/// Component choices over C2 for a unit group: ι(p) ∈ {0, g} times the
/// homomorphisms up to automorphisms of the unit group (zero, or the first
/// nonzero one with a given kernel size).
inline std::vector<ComponentSpec> component_choices(const PrimaryMonoidSpec& spec, const FiniteAbelianGroup& G,
                                                    bool up_to_automorphism = true) {
  std::vector<ComponentSpec> out;
  std::set<std::size_t> kernel_sizes_seen;
  std::vector<std::vector<GroupElement>> homs;
  for (const auto& h : homomorphisms(spec.units(), G)) {
    if (up_to_automorphism) {
      InstanceSpec probe(G, {ComponentSpec{spec, G.zero(), h}});
      std::size_t kernel = 0;
      for (std::size_t u = 0; u < spec.unit_count(); ++u) kernel += probe.unit_class(0, u) == 0;
      // maps to C2 with equal kernel size are conjugate for the groups used here
      if (!kernel_sizes_seen.insert(kernel).second) continue;
    }
    homs.push_back(h);
  }
  for (const auto& g : enumerate_elements(G))
    for (const auto& h : homs) out.push_back({spec, g, h});
  return out;
}

// ---------------------------------------------------------------------------
// Suite.

struct SuiteConfig {
  int cap = kDefaultDegreeCap;
  std::set<char> scenarios{'a', 'b', 'c', 'd', 'e', 'f'};
  bool parallel = true;
};

struct LabeledInstance {
  std::string label;
  InstanceSpec inst;
};

/// Family instances: |G| = 2, exponent-1 components with unit groups
/// C1, C2, C4, C2+C2. All multisets of one or two components, and three
/// components sharing one unit group. Instances whose components all have
/// trivial units and ι(p) = 0 are left out: B' is then factorial.
inline std::vector<LabeledInstance> family_instances() {
  const FiniteAbelianGroup C2({2});
  std::vector<std::pair<std::string, FiniteAbelianGroup>> unit_groups = {
      {"C1", FiniteAbelianGroup(std::vector<int>{})},
      {"C2", FiniteAbelianGroup({2})},
      {"C4", FiniteAbelianGroup({4})},
      {"C2+C2", FiniteAbelianGroup({2, 2})}};
  struct Choice {
    std::string label;
    std::size_t group;
    ComponentSpec comp;
  };
  std::vector<Choice> choices;
  for (std::size_t gi = 0; gi < unit_groups.size(); ++gi) {
    const auto& [name, V] = unit_groups[gi];
    for (auto& c : component_choices(exponent_one_spec(V), C2)) {
      std::string h;
      for (const auto& img : c.iota_units) h += img.str();
      choices.push_back({name + "(p:" + c.iota_p.str() + ",u:" + (h.empty() ? "-" : h) + ")", gi, std::move(c)});
    }
  }
  auto degenerate = [&](const std::vector<std::size_t>& pick) {
    return std::all_of(pick.begin(), pick.end(), [&](std::size_t i) {
      return choices[i].comp.primary.unit_count() == 1 && C2.index_of(choices[i].comp.iota_p) == 0;
    });
  };
  std::vector<LabeledInstance> out;
  auto emit = [&](const std::vector<std::size_t>& pick) {
    if (degenerate(pick)) return;
    std::vector<ComponentSpec> comps;
    std::string label;
    for (auto i : pick) {
      comps.push_back(choices[i].comp);
      label += (label.empty() ? "" : " x ") + choices[i].label;
    }
    out.push_back({label, InstanceSpec(C2, std::move(comps))});
  };
  const std::size_t n = choices.size();
  for (std::size_t a = 0; a < n; ++a) emit({a});
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) emit({a, b});
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b)
      for (std::size_t c = b; c < n; ++c)
        if (choices[a].group == choices[b].group && choices[b].group == choices[c].group) emit({a, b, c});
  return out;
}

/// |G| = 2 instances for comparing the closed-form atom list with the search:
/// one or two components drawn from exponent-1 specs over C1, C2, C3, C4,
/// C2+C2 and exponent-2 half-factorial specs over C3, C4 and C2+C2.
inline std::vector<LabeledInstance> atom_list_instances() {
  const FiniteAbelianGroup C2({2});
  std::vector<std::pair<std::string, PrimaryMonoidSpec>> specs;
  for (auto moduli : std::vector<std::vector<int>>{{}, {2}, {3}, {4}, {2, 2}}) {
    FiniteAbelianGroup V(moduli);
    specs.push_back({V.str() + "/k1", exponent_one_spec(V)});
  }
  {
    FiniteAbelianGroup V({3});
    specs.push_back({"C3/k2", spec_from_generators(V, {V.zero(), V.element({1})})});
  }
  {
    FiniteAbelianGroup V({4});
    specs.push_back({"C4/k2", spec_from_generators(V, {V.zero(), V.element({1}), V.element({3})})});
  }
  specs.push_back({"C2+C2/k2", sharp_example_spec(2)});
  std::vector<std::pair<std::string, ComponentSpec>> choices;
  for (const auto& [name, spec] : specs)
    for (auto& c : component_choices(spec, C2, false)) {
      std::string h;
      for (const auto& img : c.iota_units) h += img.str();
      choices.push_back({name + "(p:" + c.iota_p.str() + ",u:" + (h.empty() ? "-" : h) + ")", std::move(c)});
    }
  std::vector<LabeledInstance> out;
  out.push_back({"no components", InstanceSpec(C2, {})});
  for (const auto& [label, c] : choices) out.push_back({label, InstanceSpec(C2, {c})});
  for (std::size_t a = 0; a < choices.size(); ++a)
    for (std::size_t b = a + 1; b < choices.size(); ++b) {
      auto x = choices[a].second, y = choices[b].second;
      if (y.primary.exponent() < x.primary.exponent()) std::swap(x, y);
      out.push_back({choices[a].first + " x " + choices[b].first, InstanceSpec(C2, {x, y})});
    }
  return out;
}

/// Instances with |G| in {1, 3, 4}.
inline std::vector<LabeledInstance> sanity_instances() {
  std::vector<LabeledInstance> out;
  const FiniteAbelianGroup C1(std::vector<int>{}), C3({3}), C4({4}), V4({2, 2});
  const FiniteAbelianGroup U2({2});
  out.push_back({"G=C1, C2 units k=1", InstanceSpec(C1, {ComponentSpec{exponent_one_spec(U2), C1.zero(), {C1.zero()}}})});
  out.push_back({"G=C1, C3 units k=2", InstanceSpec(C1, {ComponentSpec{spec_from_generators(FiniteAbelianGroup({3}),
                                                                                           {FiniteAbelianGroup({3}).zero(),
                                                                                            FiniteAbelianGroup({3}).element({1})}),
                                                                      C1.zero(),
                                                                      {C1.zero()}}})});
  out.push_back({"G=C3, block monoid", InstanceSpec(C3, {})});
  out.push_back({"G=C3, C1 units, p:1", InstanceSpec(C3, {ComponentSpec{exponent_one_spec(FiniteAbelianGroup(std::vector<int>{})),
                                                                        C3.element({1}),
                                                                        {}}})});
  out.push_back({"G=C4, block monoid", InstanceSpec(C4, {})});
  out.push_back({"G=C2+C2, block monoid", InstanceSpec(V4, {})});
  return out;
}

namespace detail {

inline VerificationReport base_report(const std::string& scenario, const std::string& label, const InstanceSpec* inst,
                                      int cap) {
  VerificationReport r;
  r.scenario = scenario;
  r.label = label;
  r.cap = cap;
  if (inst) r.digest = instance_digest(*inst);
  return r;
}

inline std::string witness_text(const InstanceSpec& inst, Factorizer<BlockMonoid>& f, const BElement& a) {
  std::string out = inst.element_str(a) + " Z = {";
  bool first = true;
  for (const auto& z : f.factorizations(a)) {
    out += (first ? "" : ", ") + z.str();
    first = false;
  }
  return out + "}";
}

/// Prediction vs brute force for one instance, with bounds.
inline VerificationReport verify_instance(const std::string& scenario, const std::string& label,
                                          const InstanceSpec& inst, int cap, bool with_tame) {
  auto t0 = std::chrono::steady_clock::now();
  auto r = base_report(scenario, label, &inst, cap);
  auto brute = brute_invariants(inst, cap, false, with_tame);
  auto p = predict(inst);
  r.fields = compare(p, brute);
  r.bounds = check_bounds(inst, brute);
  if (r.has_violation()) {
    Factorizer<BlockMonoid> f(BlockMonoid(inst), atoms_generic(inst));
    const auto& w = brute.inv.witness_catenary ? brute.inv.witness_catenary : brute.inv.witness_rho;
    if (w) r.witness = witness_text(inst, f, *w);
    else r.witness = "no element of degree <= " + std::to_string(cap) + " shows a factorization ambiguity";
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace detail

inline VerificationReport scenario_sharp(int k) {
  auto t0 = std::chrono::steady_clock::now();
  auto spec = sharp_example_spec(k);
  auto r = detail::base_report("a:sharp", "units C" + std::to_string(k) + "+C" + std::to_string(k) + ", U_1={0,e1,e2}",
                               nullptr, default_local_valuation(spec));
  auto local = local_invariants(spec, default_local_valuation(spec));
  FieldCheck f{"c", std::to_string(k), std::to_string(local.catenary),
               local.catenary == k ? Verdict::Match : Verdict::Violation, "local catenary of the sharp example"};
  r.fields.push_back(f);
  r.fields.push_back({"half_factorial", "true", local.half_factorial ? "true" : "false",
                      local.half_factorial ? Verdict::Match : Verdict::Violation, "U_l = (U_1)^l"});
  r.bounds.push_back({"c <= t", std::to_string(local.catenary), std::to_string(local.tame), local.catenary <= local.tame});
  r.bounds.push_back({"t <= k + 1", std::to_string(local.tame), std::to_string(spec.exponent() + 1),
                      local.tame <= spec.exponent() + 1});
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline VerificationReport scenario_atom_list(const LabeledInstance& li) {
  auto t0 = std::chrono::steady_clock::now();
  auto r = detail::base_report("d:atoms", li.label, &li.inst, 0);
  auto generic = atoms_generic(li.inst);
  auto closed = atoms_closed_form(li.inst);
  const bool same = generic == closed;
  r.fields.push_back({"atoms", std::to_string(closed.size()) + " (closed form)",
                      std::to_string(generic.size()) + " (search)", same ? Verdict::Match : Verdict::Violation,
                      "closed-form list vs exhaustive search"});
  if (!same) {
    std::vector<BElement> only_generic, only_closed;
    std::set_difference(generic.begin(), generic.end(), closed.begin(), closed.end(), std::back_inserter(only_generic));
    std::set_difference(closed.begin(), closed.end(), generic.begin(), generic.end(), std::back_inserter(only_closed));
    std::string w;
    for (const auto& a : only_generic) w += "search only: " + li.inst.element_str(a) + "; ";
    for (const auto& a : only_closed) w += "closed form only: " + li.inst.element_str(a) + "; ";
    r.witness = w;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

/// Units C2 with trivial ι on units and on p: half-factorial, not factorial.
inline InstanceSpec tame_instance(int components) {
  const FiniteAbelianGroup C2({2});
  std::vector<ComponentSpec> comps(static_cast<std::size_t>(components),
                                   ComponentSpec{exponent_one_spec(C2), C2.zero(), {C2.zero()}});
  return InstanceSpec(C2, comps);
}

/// cmon <= 2 <=> c <= 2 <=> half-factorial, and with all ι(p_i) = 0 also <=> t <= 2.
inline VerificationReport scenario_equivalence(const LabeledInstance& li, int cap) {
  auto t0 = std::chrono::steady_clock::now();
  auto r = detail::base_report("f:equivalence", li.label, &li.inst, cap);
  bool all_p_trivial = std::all_of(li.inst.components().begin(), li.inst.components().end(), [&](const ComponentSpec& c) {
    return li.inst.group().index_of(c.iota_p) == 0;
  });
  auto b = brute_invariants(li.inst, cap, false, all_p_trivial);
  const bool hf = b.inv.half_factorial;
  auto check = [&](const std::string& name, bool value) {
    r.fields.push_back({name + " <=> half-factorial", hf ? "true" : "false", value ? "true" : "false",
                        value == hf ? Verdict::Match : Verdict::Violation, ""});
  };
  check("cmon <= 2", b.inv.monotone_catenary <= 2);
  check("c <= 2", b.inv.catenary <= 2);
  if (all_p_trivial) check("t <= 2", *b.inv.tame <= 2);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

/// Runs the canned scenarios. Scenario failures are collected, not thrown.
inline std::vector<VerificationReport> run_suite(const SuiteConfig& cfg) {
  if (cfg.cap < 4) throw std::invalid_argument("suite cap must be >= 4");
  std::vector<std::function<VerificationReport()>> jobs;
  const int cap = cfg.cap;
  auto has = [&](char s) { return cfg.scenarios.count(s) > 0; };
  if (has('a'))
    for (int k : {2, 3}) jobs.push_back([k] { return scenario_sharp(k); });
  if (has('b'))
    for (auto& li : family_instances())
      jobs.push_back([li, cap] { return detail::verify_instance("b:family", li.label, li.inst, cap, false); });
  if (has('c'))
    for (auto& li : sanity_instances())
      jobs.push_back([li, cap] { return detail::verify_instance("c:sanity", li.label, li.inst, cap, false); });
  if (has('d'))
    for (auto& li : atom_list_instances()) jobs.push_back([li] { return scenario_atom_list(li); });
  if (has('e'))
    for (int n : {1, 2})
      jobs.push_back([n, cap] {
        return detail::verify_instance("e:tame", std::to_string(n) + " x C2(p:0,u:0)", tame_instance(n), cap, true);
      });
  if (has('f')) {
    std::vector<LabeledInstance> sweep;
    for (auto& li : family_instances())
      if (li.inst.num_components() <= 2) sweep.push_back(li);
    for (auto& li : sanity_instances())
      if (std::all_of(li.inst.components().begin(), li.inst.components().end(),
                      [](const ComponentSpec& c) { return c.primary.exponent() == 1; }))
        sweep.push_back(li);
    for (auto& li : sweep) jobs.push_back([li, cap] { return scenario_equivalence(li, cap); });
  }

  std::vector<VerificationReport> out(jobs.size());
  auto run_one = [&](std::size_t i) {
    try {
      out[i] = jobs[i]();
    } catch (const std::exception& e) {
      out[i].scenario = "error";
      out[i].fields.push_back({"run", "completed", e.what(), Verdict::Violation, "scenario raised"});
    }
  };
  if (cfg.parallel) {
    const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.push_back(std::async(std::launch::async, [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) run_one(i);
      }));
    for (auto& f : pool) f.get();
  } else {
    for (std::size_t i = 0; i < jobs.size(); ++i) run_one(i);
  }
  return out;
}

}  // namespace factorix
