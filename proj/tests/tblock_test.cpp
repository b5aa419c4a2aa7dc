#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace factorix;

namespace {

const FiniteAbelianGroup C1(std::vector<int>{});
const FiniteAbelianGroup C2({2});
const FiniteAbelianGroup C3({3});

ComponentSpec c2_component(int p, int u) {
  return {exponent_one_spec(C2), C2.element({p}), {C2.element({u})}};
}

BElement make(const InstanceSpec& inst, std::vector<int> free, std::vector<PrimaryElement> parts) {
  BElement a = inst.identity();
  for (std::size_t x = 0; x < free.size(); ++x) a.free[x] = free[x];
  for (std::size_t i = 0; i < parts.size(); ++i) a.parts[i] = parts[i];
  return a;
}

}  // namespace

TEST(Instance, IotaValues) {
  InstanceSpec inst(C2, {c2_component(1, 0), c2_component(0, 1)});
  EXPECT_EQ(iota_value(inst, 0, {0, 0}), C2.zero());
  EXPECT_EQ(iota_value(inst, 0, {2, 0}), C2.zero());
  EXPECT_EQ(iota_value(inst, 0, {1, 0}), C2.element({1}));
  EXPECT_EQ(iota_value(inst, 1, {1, 1}), C2.element({1}));
  EXPECT_EQ(iota_value(inst, 1, {3, 0}), C2.zero());
  EXPECT_THROW(iota_value(inst, 2, {0, 0}), StructuralError);
}

TEST(Instance, IotaValueMatchesResidueOracle) {
  FiniteAbelianGroup C4({4});
  FiniteAbelianGroup V({2, 4});
  InstanceSpec inst(C4, {ComponentSpec{exponent_one_spec(V), C4.element({3}), {C4.element({2}), C4.element({1})}}});
  for (int n = 0; n < 6; ++n)
    for (std::size_t u = 0; u < V.order(); ++u) {
      if (n == 0 && u != 0) continue;
      auto a = make(inst, {}, {{n, u}});
      auto want = oracle::class_of(inst, a);
      EXPECT_EQ(iota_value(inst, 0, {n, u}).residues, want);
    }
}

TEST(Instance, ValidationNamesTheField) {
  try {
    InstanceSpec(C2, {ComponentSpec{exponent_one_spec(FiniteAbelianGroup({3})), C2.zero(), {C2.element({1})}}});
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.path(), "components[0].iota_units[0]");
  }
  try {
    InstanceSpec(C2, {ComponentSpec{sharp_example_spec(3), C2.zero(), {C2.zero(), C2.zero()}}, c2_component(0, 0)});
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.path(), "components[1].k");
  }
  EXPECT_THROW(InstanceSpec(C2, {ComponentSpec{exponent_one_spec(C2), C2.zero(), {}}}), ValidationError);
}

TEST(Instance, CountsByExponent) {
  FiniteAbelianGroup V({3});
  auto two = spec_from_generators(V, {V.zero(), V.element({1})});
  InstanceSpec inst(C2, {c2_component(0, 1), {two, C2.zero(), {C2.zero()}}});
  EXPECT_EQ(inst.r(), 1u);
  EXPECT_EQ(inst.s(), 1u);
}

TEST(Block, Membership) {
  InstanceSpec inst(C2, {});
  EXPECT_TRUE(is_block(inst, inst.identity()));
  EXPECT_TRUE(is_block(inst, make(inst, {0, 2}, {})));
  EXPECT_FALSE(is_block(inst, make(inst, {0, 1}, {})));
  InstanceSpec one(C2, {c2_component(1, 1)});
  EXPECT_TRUE(is_block(one, make(one, {0, 1}, {{1, 0}})));
  EXPECT_TRUE(is_block(one, make(one, {}, {{1, 1}})));
  EXPECT_FALSE(is_block(one, make(one, {}, {{1, 0}})));
}

TEST(Block, DivisibilityMatchesMultiplicationTable) {
  InstanceSpec inst(C2, {c2_component(1, 1), c2_component(0, 1)});
  BlockMonoid m(inst);
  auto elems = enumerate_B(inst, 4, true);
  std::set<std::pair<BElement, BElement>> divides_pairs;  // (a, b) with a | b
  for (const auto& a : elems)
    for (const auto& c : elems) {
      auto b = m.multiply(a, c);
      if (b.degree() <= 4) divides_pairs.insert({a, b});
    }
  for (const auto& a : elems)
    for (const auto& b : elems) {
      EXPECT_EQ(divides(inst, a, b), divides_pairs.count({a, b}) > 0)
          << inst.element_str(a) << " | " << inst.element_str(b);
      EXPECT_EQ(divides(inst, a, b), oracle::quotient(inst, b, a).has_value());
    }
  EXPECT_TRUE(divides(inst, inst.identity(), elems.back()));
  EXPECT_TRUE(divides(inst, elems.back(), elems.back()));
}

TEST(Block, SaturatedInAmbient) {
  InstanceSpec inst(C3, {ComponentSpec{exponent_one_spec(C2), C3.element({1}), {C3.zero()}}});
  BlockMonoid m(inst);
  auto elems = enumerate_B(inst, 5, true);
  for (const auto& a : elems)
    for (const auto& b : elems)
      if (m.divide(b, a)) {
        EXPECT_TRUE(divides(inst, a, b));
        EXPECT_EQ(block_class(inst, *m.divide(b, a)), 0u);
      }
}

TEST(Enumerate, DegreeZeroIsIdentity) {
  InstanceSpec inst(C2, {c2_component(1, 1)});
  auto v = enumerate_B(inst, 0);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0], inst.identity());
}

TEST(Enumerate, BlockMonoidOverC2UpToDegreeTwo) {
  InstanceSpec inst(C2, {});
  auto v = enumerate_B(inst, 2);
  std::vector<BElement> want = {inst.identity(), make(inst, {1, 0}, {}), make(inst, {0, 2}, {}), make(inst, {2, 0}, {})};
  std::sort(want.begin(), want.end());
  EXPECT_EQ(v, want);
}

TEST(Enumerate, ComponentFreeCountsMatchMultisetScan) {
  for (auto G : {C2, C3, FiniteAbelianGroup({2, 2}), FiniteAbelianGroup({4})}) {
    InstanceSpec inst(G, {});
    for (int N = 0; N <= 6; ++N) {
      std::size_t count = 0;
      for (int len = 0; len <= N; ++len)
        oracle::for_each_multiset(G.order(), len, [&](const std::vector<std::size_t>& seq) {
          std::vector<int> acc(G.num_factors(), 0);
          for (auto x : seq) acc = oracle::add_residues(G, acc, oracle::residues_of(G, x));
          if (oracle::all_zero(acc)) ++count;
        });
      EXPECT_EQ(enumerate_B(inst, N).size(), count) << G.str() << " N=" << N;
    }
  }
}

TEST(Enumerate, SortedUniqueBlocks) {
  InstanceSpec inst(C2, {c2_component(1, 1), c2_component(0, 0)});
  auto v = enumerate_B(inst, 6, false);
  EXPECT_TRUE(std::is_sorted(v.begin(), v.end()));
  EXPECT_EQ(std::adjacent_find(v.begin(), v.end()), v.end());
  for (const auto& a : v) {
    EXPECT_TRUE(is_block(inst, a));
    EXPECT_EQ(a.free[0], 0);
  }
}

TEST(Enumerate, RefusesTooManyElements) {
  InstanceSpec inst(C2, {c2_component(1, 1), c2_component(0, 1)});
  EXPECT_THROW(enumerate_B(inst, 12, true, 100), ResourceError);
}

TEST(Atoms, TrivialGroup) {
  InstanceSpec inst(C1, {ComponentSpec{exponent_one_spec(C1), C1.zero(), {}}});
  auto A = atoms_generic(inst);
  // the prime letter 0 and p
  std::vector<BElement> want = {make(inst, {}, {{1, 0}}), make(inst, {1}, {})};
  std::sort(want.begin(), want.end());
  EXPECT_EQ(A, want);
}

TEST(Atoms, BlockMonoidAtomsAreMinimalZeroSumSequences) {
  for (auto G : {C3, FiniteAbelianGroup({4}), FiniteAbelianGroup({2, 2})}) {
    InstanceSpec inst(G, {});
    auto A = atoms_generic(inst);
    std::set<GSequence> got;
    for (const auto& a : A) {
      GSequence s;
      for (std::size_t x = 0; x < a.free.size(); ++x) s.insert(G.at(x), a.free[x]);
      got.insert(s);
    }
    EXPECT_EQ(got, oracle::minimal_zero_sum(G, davenport_constant(G)));
  }
}

TEST(Atoms, ClosedFormWithoutComponents) {
  InstanceSpec inst(C2, {});
  std::vector<BElement> want = {make(inst, {1, 0}, {}), make(inst, {0, 2}, {})};
  std::sort(want.begin(), want.end());
  EXPECT_EQ(atoms_closed_form(inst), want);
  EXPECT_EQ(atoms_generic(inst), want);
}

TEST(Atoms, ClosedFormSingleComponent) {
  InstanceSpec inst(C2, {c2_component(1, 1)});
  auto A = atoms_closed_form(inst);
  EXPECT_EQ(A, atoms_generic(inst));
  auto has = [&](const BElement& a) { return std::find(A.begin(), A.end(), a) != A.end(); };
  EXPECT_TRUE(has(make(inst, {1, 0}, {})));
  EXPECT_TRUE(has(make(inst, {0, 2}, {})));
  EXPECT_TRUE(has(make(inst, {}, {{1, 1}})));
  EXPECT_TRUE(has(make(inst, {0, 1}, {{1, 0}})));
}

TEST(Atoms, MixedAtomsPresent) {
  InstanceSpec inst(C2, {c2_component(1, 0), c2_component(1, 0)});
  auto A = atoms_closed_form(inst);
  EXPECT_EQ(A, atoms_generic(inst));
  EXPECT_NE(std::find(A.begin(), A.end(), make(inst, {}, {{1, 0}, {1, 0}})), A.end());
}

TEST(Atoms, ClosedFormPreconditions) {
  EXPECT_THROW(atoms_closed_form(InstanceSpec(C3, {})), UnsupportedInstance);
  FiniteAbelianGroup V({3});
  PrimaryMonoidSpec not_hf(V, 2, {{V.zero()}, {V.zero()}});
  EXPECT_THROW(atoms_closed_form(InstanceSpec(C2, {{not_hf, C2.zero(), {C2.zero()}}})), UnsupportedInstance);
}

TEST(Atoms, StructuralProperties) {
  for (const auto& li : {LabeledInstance{"k1", k1_instance()},
                         LabeledInstance{"c3", InstanceSpec(C3, {ComponentSpec{exponent_one_spec(C2), C3.element({1}), {C3.zero()}}})}}) {
    const auto& inst = li.inst;
    BlockMonoid m(inst);
    auto A = atoms_generic(inst);
    for (const auto& a : A)
      for (const auto& b : A)
        if (!(a == b)) {
          EXPECT_FALSE(divides(inst, a, b)) << li.label;
        }
    for (const auto& e : enumerate_B(inst, 6, true)) {
      if (e.degree() == 0) continue;
      bool some = std::any_of(A.begin(), A.end(), [&](const BElement& a) { return divides(inst, a, e); });
      EXPECT_TRUE(some) << inst.element_str(e);
    }
  }
}

TEST(Atoms, ZeroIsPrime) {
  auto inst = k1_instance();
  BlockMonoid m(inst);
  const auto zero = zero_letter(inst);
  auto elems = enumerate_B(inst, 4, true);
  for (const auto& a : elems)
    for (const auto& b : elems) {
      auto ab = m.multiply(a, b);
      if (divides(inst, zero, ab)) {
        EXPECT_TRUE(divides(inst, zero, a) || divides(inst, zero, b));
      }
    }
}
