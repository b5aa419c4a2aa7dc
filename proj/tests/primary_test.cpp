#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace factorix;

namespace {

const FiniteAbelianGroup C2({2});

PrimaryMonoidSpec type_one_two_trivial_U1(const FiniteAbelianGroup& V) {
  return PrimaryMonoidSpec(V, 2, {{V.zero()}, {V.zero()}});
}

// p^n u with no split into two non-units, by trying every pair of members.
std::set<PrimaryElement> atoms_by_products(const PrimaryMonoidSpec& spec, int max_val) {
  PrimaryMonoid m(spec);
  auto members = m.members(max_val);
  std::set<PrimaryElement> products;
  for (const auto& a : members)
    for (const auto& b : members)
      if (a.valuation > 0 && b.valuation > 0) products.insert(m.multiply(a, b));
  std::set<PrimaryElement> out;
  for (const auto& a : members)
    if (a.valuation > 0 && !products.count(a)) out.insert(a);
  return out;
}

}  // namespace

TEST(PrimarySpec, Membership) {
  auto spec = type_one_two_trivial_U1(C2);
  EXPECT_TRUE(is_member(spec, 0, C2.zero()));
  EXPECT_FALSE(is_member(spec, 0, C2.element({1})));
  EXPECT_TRUE(is_member(spec, 1, C2.zero()));
  EXPECT_FALSE(is_member(spec, 1, C2.element({1})));
  for (int n = 2; n < 6; ++n) {
    EXPECT_TRUE(is_member(spec, n, C2.zero()));
    EXPECT_TRUE(is_member(spec, n, C2.element({1})));
  }
}

TEST(PrimarySpec, RejectsIncoherentTables) {
  FiniteAbelianGroup C4({4});
  // U_1 * U_1 must lie in U_2
  EXPECT_THROW(PrimaryMonoidSpec(C4, 3, {{C4.zero()}, {C4.element({1})}, {C4.zero()}}), ValidationError);
  EXPECT_THROW(PrimaryMonoidSpec(C4, 1, {{C4.element({1})}}), ValidationError);
  EXPECT_THROW(PrimaryMonoidSpec(C4, 2, {{C4.zero()}}), ValidationError);
  EXPECT_THROW(PrimaryMonoidSpec(C4, 0, {}), ValidationError);
  try {
    PrimaryMonoidSpec(C4, 3, {{C4.zero()}, {C4.element({1})}, {C4.zero()}});
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.path(), "levels[2]");
  }
}

TEST(PrimarySpec, RejectsNonMinimalExponent) {
  EXPECT_THROW(PrimaryMonoidSpec(C2, 2, {{C2.zero()}, {C2.zero(), C2.element({1})}}), ValidationError);
}

TEST(PrimaryAtoms, TypeOneOneIsAllUnitsTimesP) {
  auto spec = exponent_one_spec(C2);
  auto A = atoms(spec);
  std::vector<PrimaryElement> want = {{1, 0}, {1, 1}};
  EXPECT_EQ(A, want);
  EXPECT_TRUE(is_half_factorial(spec));
}

TEST(PrimaryAtoms, TypeOneTwoWithTrivialU1) {
  FiniteAbelianGroup C3({3});
  auto spec = type_one_two_trivial_U1(C3);
  auto A = atoms(spec);
  std::set<PrimaryElement> want = {{1, 0}, {2, 1}, {2, 2}};
  EXPECT_EQ(std::set<PrimaryElement>(A.begin(), A.end()), want);
  EXPECT_EQ(want, atoms_by_products(spec, 6));
  EXPECT_FALSE(is_half_factorial(spec));
  EXPECT_FALSE(is_half_factorial_by_levels(spec));
}

TEST(PrimaryAtoms, EmptyFirstLevel) {
  FiniteAbelianGroup C3({3});
  PrimaryMonoidSpec spec(C3, 2, {{C3.zero()}, {}});
  auto A = atoms(spec);
  ASSERT_FALSE(A.empty());
  for (const auto& a : A) EXPECT_TRUE(a.valuation == 2 || a.valuation == 3);
  EXPECT_EQ(std::set<PrimaryElement>(A.begin(), A.end()), atoms_by_products(spec, 8));
}

TEST(PrimaryAtoms, SearchBoundIsSufficient) {
  FiniteAbelianGroup C4({4});
  for (const auto& spec : {sharp_example_spec(2), sharp_example_spec(3), type_one_two_trivial_U1(C4),
                           PrimaryMonoidSpec(C4, 3, {{C4.zero()}, {C4.zero(), C4.element({2})}, {C4.zero(), C4.element({2})}})}) {
    auto A = atoms(spec);
    EXPECT_EQ(std::set<PrimaryElement>(A.begin(), A.end()), atoms_by_products(spec, 4 * spec.exponent() + 2));
  }
}

TEST(PrimaryHalfFactorial, TwoCriteriaAgree) {
  // every coherent table over C4 with k <= 3 that passes validation
  FiniteAbelianGroup C4({4});
  int checked = 0;
  for (int k = 1; k <= 3; ++k)
    for (unsigned m1 = 0; m1 < 16; ++m1)
      for (unsigned m2 = 0; m2 < (k >= 3 ? 16u : 1u); ++m2) {
        std::vector<std::set<GroupElement>> levels{{C4.zero()}};
        auto from_mask = [&](unsigned m) {
          std::set<GroupElement> s;
          for (int x = 0; x < 4; ++x)
            if (m & (1u << x)) s.insert(C4.element({x}));
          return s;
        };
        if (k >= 2) levels.push_back(from_mask(m1));
        if (k >= 3) levels.push_back(from_mask(m2));
        if (k == 1 && m1 != 0) continue;
        try {
          PrimaryMonoidSpec spec(C4, k, levels);
          ++checked;
          const bool hf = is_half_factorial(spec);
          EXPECT_EQ(hf, is_half_factorial_by_levels(spec));
          if (hf) {
            // (U_1)^k is the whole unit group
            std::set<std::size_t> power{0};
            for (int l = 0; l < k; ++l) {
              std::set<std::size_t> next;
              for (auto a : power)
                for (auto b : spec.level(1)) next.insert(C4.add_index(a, b));
              power = next;
            }
            EXPECT_EQ(power.size(), C4.order());
          }
        } catch (const ValidationError&) {
        }
      }
  EXPECT_GT(checked, 10);
}

TEST(PrimaryLocal, TypeOneOneOverC2) {
  auto inv = local_invariants(exponent_one_spec(C2), 6);
  EXPECT_EQ(inv.catenary, 2);
  EXPECT_EQ(inv.tame, 2);
  EXPECT_TRUE(inv.half_factorial);
}

TEST(PrimaryLocal, FactorialSpec) {
  auto inv = local_invariants(exponent_one_spec(FiniteAbelianGroup(std::vector<int>{})), 4);
  EXPECT_EQ(inv.catenary, 0);
  EXPECT_EQ(inv.tame, 0);
}

TEST(PrimaryLocal, SharpExample) {
  for (int k : {2, 3}) {
    auto spec = sharp_example_spec(k);
    auto inv = local_invariants(spec, default_local_valuation(spec));
    EXPECT_EQ(inv.catenary, k);
    EXPECT_TRUE(inv.half_factorial);
    EXPECT_LE(inv.catenary, inv.tame);
    EXPECT_LE(inv.tame, spec.exponent() + 1);
    EXPECT_EQ(inv.monotone_catenary, inv.catenary);
  }
}

TEST(PrimaryLocal, RequiresEnoughValuation) {
  EXPECT_THROW(local_invariants(sharp_example_spec(3), 3), std::invalid_argument);
}

TEST(PrimaryExchange, HalfFactorialTypeOneK) {
  // every atom b divides a_1 ... a_{k+1}, with a cofactor of length k
  for (const auto& spec : {exponent_one_spec(C2), exponent_one_spec(FiniteAbelianGroup({3})), sharp_example_spec(2),
                           sharp_example_spec(3)}) {
    ASSERT_TRUE(is_half_factorial(spec));
    PrimaryMonoid m(spec);
    auto A = atoms(spec);
    Factorizer<PrimaryMonoid> f(m, A);
    const int k = spec.exponent();
    std::vector<std::size_t> idx(static_cast<std::size_t>(k + 1), 0);
    std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t pos, std::size_t from) {
      if (pos == idx.size()) {
        PrimaryElement prod{};
        for (auto i : idx) prod = m.multiply(prod, A[i]);
        for (const auto& b : A) {
          auto rest = m.divide(prod, b);
          ASSERT_TRUE(rest.has_value());
          auto L = length_set(f.factorizations(*rest));
          EXPECT_EQ(L, std::set<int>{k});
        }
        return;
      }
      for (std::size_t i = from; i < A.size(); ++i) {
        idx[pos] = i;
        walk(pos + 1, i);
      }
    };
    walk(0, 0);
  }
}
