// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <iostream>

#include "oracles.hpp"

using namespace factorix;

namespace {

int failures = 0;

void report(int n, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " " << n << ": " << detail << std::endl;
  if (!ok) ++failures;
}

std::vector<const VerificationReport*> of(const std::vector<VerificationReport>& all, const std::string& prefix) {
  std::vector<const VerificationReport*> out;
  for (const auto& r : all)
    if (r.scenario.rfind(prefix, 0) == 0) out.push_back(&r);
  return out;
}

const FieldCheck* field(const VerificationReport& r, const std::string& name) {
  for (const auto& f : r.fields)
    if (f.name == name) return &f;
  return nullptr;
}

const BoundResult* bound(const VerificationReport& r, const std::string& name) {
  for (const auto& b : r.bounds)
    if (b.name == name) return &b;
  return nullptr;
}

template <class F>
void guarded(int n, F&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(n, false, std::string("raised: ") + e.what());
  }
}

}  // namespace

int main() {
  SuiteConfig cfg;
  cfg.cap = 8;
  auto suite = run_suite(cfg);
  std::size_t errors = of(suite, "error").size();

  guarded(1, [&] {
    auto fam = of(suite, "b:");
    std::size_t exact = 0;
    std::string bad;
    for (auto* r : fam) {
      bool ok = true;
      for (const char* name : {"c", "cmon", "rho", "delta"}) {
        auto* f = field(*r, name);
        ok = ok && f && f->verdict == Verdict::Match;
      }
      if (ok) ++exact;
      else if (bad.empty()) bad = " first mismatch: " + r->label;
    }
    report(1, !fam.empty() && exact == fam.size() && errors == 0,
           "family c = cmon = 2+min{2,k}, rho = c/2, delta = [1,c-2] at cap 8: " + std::to_string(exact) + "/" +
               std::to_string(fam.size()) + " exact" + bad);
  });

  guarded(2, [&] {
    auto sharp = of(suite, "a:");
    bool ok = sharp.size() == 2;
    for (auto* r : sharp) ok = ok && !r->has_violation();
    report(2, ok, "sharp local example c = k for k in {2,3}");
  });

  guarded(3, [&] {
    auto lists = of(suite, "d:");
    std::size_t same = 0;
    for (auto* r : lists) same += !r->has_violation();
    report(3, same >= 20 && same == lists.size(),
           "closed-form atom lists equal search on " + std::to_string(same) + "/" + std::to_string(lists.size()) +
               " instances");
  });

  guarded(4, [&] {
    std::size_t seen = 0, ok = 0;
    for (auto* r : of(suite, "c:")) {
      if (r->label.find("block monoid") == std::string::npos) continue;
      ++seen;
      auto* a = bound(*r, "min delta = 1 (|G| >= 3)");
      auto* b = bound(*r, "rho(H) > 1 (|G| >= 3)");
      auto* c = bound(*r, "c(H) >= 3 (|G| >= 3)");
      if (a && b && c && a->holds && b->holds && c->holds) ++ok;
    }
    report(4, seen == 3 && ok == seen,
           "block monoids over C3, C4, C2+C2: min delta = 1, rho > 1, c >= 3 (" + std::to_string(ok) + "/" +
               std::to_string(seen) + ")");
  });

  guarded(5, [&] {
    bool tame_ok = true;
    auto tame = of(suite, "e:");
    for (auto* r : tame) {
      auto* t = field(*r, "t");
      tame_ok = tame_ok && t && t->verdict == Verdict::Match && t->brute == "2";
    }
    auto eq = of(suite, "f:");
    std::size_t held = 0;
    for (auto* r : eq) held += !r->has_violation();
    report(5, !tame.empty() && tame_ok && !eq.empty() && held == eq.size(),
           std::string("t = 2 on trivial-iota instances: ") + (tame_ok ? "yes" : "no") +
               "; four-way equivalence on " + std::to_string(held) + "/" + std::to_string(eq.size()) + " instances");
  });

  guarded(6, [&] {
    const FiniteAbelianGroup C2({2});
    auto comp = [&](int p, int u) { return ComponentSpec{exponent_one_spec(C2), C2.element({p}), {C2.element({u})}}; };
    std::size_t pairs = 0, bad = 0;
    for (const auto& inst : {k1_instance(), InstanceSpec(C2, {comp(1, 1), comp(0, 1)}), InstanceSpec(C2, {comp(0, 1), comp(0, 1)})}) {
      auto r = check_chain_lemma(inst, 8, 5, 6);
      pairs += r.pairs_checked;
      bad += r.counterexamples.size();
    }
    report(6, pairs > 0 && bad == 0,
           "monotone R-chains for 5 <= |y| <= 6 at cap 8, k in {1,2}: " + std::to_string(pairs) + " pairs, " +
               std::to_string(bad) + " counterexamples");
  });

  guarded(7, [&] {
    std::size_t with_bounds = 0, held = 0;
    for (const auto& r : suite) {
      if (r.bounds.empty()) continue;
      ++with_bounds;
      held += r.bounds_hold();
    }
    report(7, with_bounds > 0 && held == with_bounds && errors == 0,
           "bound suite holds on " + std::to_string(held) + "/" + std::to_string(with_bounds) + " instances");
  });

  guarded(8, [&] {
    auto t0 = std::chrono::steady_clock::now();
    std::size_t checked = 0, agree = 0;
    auto check = [&](std::vector<int> moduli) {
      ++checked;
      agree += davenport_constant(FiniteAbelianGroup(moduli)) == oracle::davenport_rank_two(moduli);
    };
    for (int n = 1; n <= 8; ++n) check({n});
    for (int m = 2; m <= 6; ++m)
      for (int n = m; m * n <= 36; n += m) check({m, n});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(8, agree == checked && secs < 60,
           "Davenport search equals closed form on " + std::to_string(agree) + "/" + std::to_string(checked) +
               " groups in " + std::to_string(secs) + " s");
  });

  guarded(9, [&] {
    const FiniteAbelianGroup C2({2});
    auto comp = [&](int p, int u) { return ComponentSpec{exponent_one_spec(C2), C2.element({p}), {C2.element({u})}}; };
    std::size_t elements = 0, same = 0;
    for (const auto& inst : {k1_instance(), InstanceSpec(C2, {comp(1, 1), comp(0, 1)})}) {
      auto A = atoms_generic(inst);
      Factorizer<BlockMonoid> f(BlockMonoid(inst), A);
      for (const auto& a : enumerate_B(inst, 6, true)) {
        ++elements;
        same += oracle::engine_sets(f.factorizations(a)) == oracle::factorizations(inst, A, a);
      }
    }
    report(9, elements > 0 && same == elements,
           "engine Z(a) equals naive search on " + std::to_string(same) + "/" + std::to_string(elements) +
               " elements of degree <= 6");
  });

  guarded(10, [&] {
    auto b = brute_invariants(k1_instance(), 8, false, false);
    report(10, b.inv.rho == Rational(3, 2), "k = 1 instance rho = " + b.inv.rho.str());
  });

  return failures == 0 ? 0 : 1;
}
