#include <gtest/gtest.h>

#include "support/brute.hpp"

using namespace xq;

TEST(EvalCircuit, Majority) {
  auto c = fixtures::maj_n(3);
  EXPECT_TRUE(eval_circuit(c, {1, 1, 0}));
  EXPECT_FALSE(eval_circuit(c, {1, 0, 0}));
}

TEST(EvalCircuit, ParallelEdges) {
  MajCircuit c;
  c.var_count = 2;
  auto a = c.input(0), b = c.input(1);
  c.output = c.add_maj({{a, 2}, {b, 1}});
  EXPECT_TRUE(eval_circuit(c, {1, 0}));
  EXPECT_FALSE(eval_circuit(c, {0, 1}));
}

TEST(EvalCircuit, BoolGates) {
  BoolCircuit c;
  c.var_count = 2;
  auto a = c.input(0), b = c.input(1);
  c.output = c.add_or({c.add_and({a, c.add_not(b)}), c.add_and({c.add_not(a), b})});
  EXPECT_FALSE(eval_circuit(c, {0, 0}));
  EXPECT_TRUE(eval_circuit(c, {0, 1}));
  EXPECT_TRUE(eval_circuit(c, {1, 0}));
  EXPECT_FALSE(eval_circuit(c, {1, 1}));
}

TEST(EvalCircuit, RejectsCycles) {
  BoolCircuit c;
  c.var_count = 1;
  c.input(0);
  c.add_and({0, 2});
  c.add_not(1);
  c.output = 2;
  EXPECT_FALSE(validate_circuit(c).empty());
  EXPECT_THROW(eval_circuit(c, {1}), InvalidModel);
}

TEST(DepthWeft, Examples) {
  auto dw = depth_and_weft(fixtures::maj_n(3));
  EXPECT_EQ(dw.depth, 1u);
  EXPECT_EQ(dw.weft, 0u);
  dw = depth_and_weft(fixtures::maj_n(5));
  EXPECT_EQ(dw.depth, 1u);
  EXPECT_EQ(dw.weft, 1u);
  MajCircuit chain;
  chain.var_count = 1;
  auto i = chain.input(0);
  auto g = chain.add_maj({{i, 1}});
  chain.output = chain.add_maj({{g, 1}});
  dw = depth_and_weft(chain);
  EXPECT_EQ(dw.depth, 2u);
  EXPECT_EQ(dw.weft, 0u);
}

TEST(DepthWeft, WeftAtMostDepth) {
  Rng rng(21);
  for (int i = 0; i < 300; ++i) {
    auto mc = random_maj_circuit(rng, uniform(rng, 1, 8), uniform(rng, 1, 10));
    auto dw = depth_and_weft(mc);
    EXPECT_LE(dw.weft, dw.depth);
    auto bc = random_bool_circuit(rng, uniform(rng, 1, 8), uniform(rng, 1, 10));
    auto bw = depth_and_weft(bc);
    EXPECT_LE(bw.weft, bw.depth);
  }
}

TEST(WcsBrute, Examples) {
  auto c = fixtures::maj_n(3);
  auto yes = wcs_brute(c, 2);
  ASSERT_TRUE(yes.yes);
  EXPECT_EQ(yes.instance()->weight(), 2u);
  EXPECT_TRUE(eval_circuit(c, *yes.instance()));
  EXPECT_FALSE(wcs_brute(c, 1).yes);
  EXPECT_FALSE(wcs_brute(c, 0).yes);
  EXPECT_FALSE(wcs_brute(c, 4).yes);
}

TEST(WcsBrute, BudgetReportsSize) {
  auto c = fixtures::maj_n(20);
  try {
    wcs_brute(c, 10, 1000);
    FAIL() << "expected BudgetExceeded";
  } catch (const BudgetExceeded& e) {
    EXPECT_NE(std::string(e.what()).find("184756"), std::string::npos) << e.what();
  }
}

TEST(MajCircuit, Monotone) {
  Rng rng(22);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = uniform(rng, 1, 10);
    auto c = random_maj_circuit(rng, n, uniform(rng, 1, 8));
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
      if (!eval_circuit(c, Instance::from_mask(n, a))) continue;
      for (std::size_t j = 0; j < n; ++j) {
        ASSERT_TRUE(eval_circuit(c, Instance::from_mask(n, a | (std::uint64_t{1} << j))));
      }
    }
  }
}

TEST(MajCircuit, ZeroWeightIsUnsatisfiable) {
  Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    auto c = random_maj_circuit(rng, uniform(rng, 1, 8), uniform(rng, 1, 8));
    EXPECT_FALSE(wcs_brute(c, 0).yes);
  }
}

TEST(WcsBrute, MatchesTruthTable) {
  Rng rng(24);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = uniform(rng, 1, 12);
    auto mc = random_maj_circuit(rng, n, uniform(rng, 1, 8));
    auto bc = random_bool_circuit(rng, n, uniform(rng, 1, 8));
    for (std::size_t k = 0; k <= n; ++k) {
      ASSERT_EQ(wcs_brute(mc, k).yes, brute::weighted_sat(mc, k));
      ASSERT_EQ(wcs_brute(bc, k).yes, brute::weighted_sat(bc, k));
    }
  }
}

TEST(EvalCircuit, MatchesRecursiveEvaluator) {
  Rng rng(25);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = uniform(rng, 1, 8);
    auto bc = random_bool_circuit(rng, n, uniform(rng, 1, 12));
    auto mc = random_maj_circuit(rng, n, uniform(rng, 1, 12));
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
      auto x = Instance::from_mask(n, a);
      ASSERT_EQ(eval_circuit(bc, x), brute::value(bc, a));
      ASSERT_EQ(eval_circuit(mc, x), brute::value(mc, a));
    }
  }
}
