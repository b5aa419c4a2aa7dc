#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace factorix;

TEST(Group, OrderAndIndexRoundTrip) {
  FiniteAbelianGroup G({2, 6});
  EXPECT_EQ(G.order(), 12u);
  for (std::size_t x = 0; x < G.order(); ++x) {
    EXPECT_EQ(G.index_of(G.at(x)), x);
    EXPECT_EQ(G.at(x).residues, oracle::residues_of(G, x));
  }
}

TEST(Group, TrivialGroupHasOneElement) {
  FiniteAbelianGroup C1(std::vector<int>{});
  EXPECT_EQ(C1.order(), 1u);
  EXPECT_TRUE(C1.is_trivial());
  EXPECT_EQ(C1.str(), "C1");
}

TEST(Group, AdditionAgreesWithResidueArithmetic) {
  FiniteAbelianGroup G({3, 3});
  for (std::size_t a = 0; a < G.order(); ++a)
    for (std::size_t b = 0; b < G.order(); ++b) {
      auto expect = oracle::add_residues(G, oracle::residues_of(G, a), oracle::residues_of(G, b));
      EXPECT_EQ(G.at(G.add_index(a, b)).residues, expect);
      EXPECT_EQ(add(G, G.at(a), G.at(b)).residues, expect);
    }
}

TEST(Group, NegateAndOrder) {
  FiniteAbelianGroup G({4});
  EXPECT_EQ(negate(G, G.element({1})), G.element({3}));
  EXPECT_EQ(order_of(G, G.element({2})), 2);
  EXPECT_EQ(order_of(G, G.zero()), 1);
  EXPECT_EQ(multiple(G, G.element({3}), 3), G.element({1}));
}

TEST(Group, RejectsForeignElements) {
  FiniteAbelianGroup G({2});
  EXPECT_THROW(G.require(GroupElement{{0, 1}}), StructuralError);
  EXPECT_THROW(add(G, GroupElement{{5}}, G.zero()), StructuralError);
}

TEST(Sequence, SigmaOfTwoGeneratorsInC2) {
  FiniteAbelianGroup C2({2});
  GSequence S({C2.element({1}), C2.element({1})});
  EXPECT_EQ(sigma(C2, S), C2.zero());
  EXPECT_EQ(S.length(), 2u);
  EXPECT_EQ(S.str(), "(1)^2");
}

TEST(Sequence, SigmaIsAHomomorphism) {
  FiniteAbelianGroup G({2, 4});
  auto gen = oracle::rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, G.order() - 1);
  for (int trial = 0; trial < 200; ++trial) {
    GSequence S, T;
    for (int i = 0; i < 4; ++i) S.insert(G.at(pick(gen)));
    for (int i = 0; i < 3; ++i) T.insert(G.at(pick(gen)));
    EXPECT_EQ(sigma(G, S * T), add(G, sigma(G, S), sigma(G, T)));
  }
}

TEST(MinimalZeroSum, C3List) {
  FiniteAbelianGroup C3({3});
  auto all = enumerate_elements(C3);
  auto got = minimal_zero_sum_sequences(C3, {all.begin(), all.end()}, 3);
  std::set<GSequence> want = {GSequence({C3.zero()}),
                              GSequence({C3.element({1}), C3.element({2})}),
                              GSequence({C3.element({1}), C3.element({1}), C3.element({1})}),
                              GSequence({C3.element({2}), C3.element({2}), C3.element({2})})};
  EXPECT_EQ(got, want);
}

class MinimalZeroSumOracle : public ::testing::TestWithParam<std::vector<int>> {};

TEST_P(MinimalZeroSumOracle, MatchesSubsequenceScan) {
  FiniteAbelianGroup G(GetParam());
  const int D = oracle::davenport_rank_two(GetParam());
  auto all = enumerate_elements(G);
  auto got = minimal_zero_sum_sequences(G, {all.begin(), all.end()}, D);
  EXPECT_EQ(got, oracle::minimal_zero_sum(G, D));
  for (const auto& S : got) EXPECT_LE(static_cast<int>(S.length()), D);
}

INSTANTIATE_TEST_SUITE_P(SmallGroups, MinimalZeroSumOracle,
                         ::testing::Values(std::vector<int>{2}, std::vector<int>{3}, std::vector<int>{4},
                                           std::vector<int>{5}, std::vector<int>{2, 2}, std::vector<int>{2, 4},
                                           std::vector<int>{3, 3}));

TEST(MinimalZeroSum, RestrictedSupport) {
  FiniteAbelianGroup C4({4});
  auto got = minimal_zero_sum_sequences(C4, {C4.element({2})}, 4);
  ASSERT_EQ(got.size(), 1u);
  EXPECT_EQ(*got.begin(), GSequence({C4.element({2}), C4.element({2})}));
}

TEST(Davenport, CyclicGroups) {
  for (int n = 1; n <= 8; ++n) EXPECT_EQ(davenport_constant(FiniteAbelianGroup({n})), n) << "C" << n;
}

TEST(Davenport, RankTwoClosedForm) {
  for (int m = 2; m <= 6; ++m)
    for (int n = m; m * n <= 36; n += m) EXPECT_EQ(davenport_constant(FiniteAbelianGroup({m, n})), m + n - 1);
}

TEST(Davenport, BruteForceLengthScanOnTinyGroups) {
  // longest zero-sum free multiset found by scanning all multisets
  for (auto moduli : {std::vector<int>{2, 2}, std::vector<int>{3}, std::vector<int>{2, 4}, std::vector<int>{3, 3}}) {
    FiniteAbelianGroup G(moduli);
    int longest = 0;
    for (int len = 1; len <= 6; ++len) {
      bool found = false;
      oracle::for_each_multiset(G.order(), len, [&](const std::vector<std::size_t>& seq) {
        if (!found && !oracle::has_zero_sum_subsequence(G, seq, 0)) found = true;
      });
      if (found) longest = len;
    }
    EXPECT_EQ(davenport_constant(G), longest + 1) << G.str();
  }
}

TEST(Davenport, RefusesLargeGroups) {
  EXPECT_THROW(davenport_constant(FiniteAbelianGroup({100})), ResourceError);
  EXPECT_THROW(davenport_constant(FiniteAbelianGroup({12}), 8), ResourceError);
  EXPECT_EQ(davenport_constant(FiniteAbelianGroup({12}), 16), 12);
}
