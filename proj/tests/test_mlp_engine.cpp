#include <gtest/gtest.h>

#include "support/suites.hpp"

using namespace xq;

TEST(McrMlp, Examples) {
  auto and3 = circuit_to_mlp(fixtures::and_n(3));
  auto v = mcr_mlp(and3, {1, 1, 1}, 1);
  ASSERT_TRUE(v.yes);
  EXPECT_EQ(v.instance()->weight(), 2u);
  EXPECT_FALSE(eval_mlp(and3, *v.instance()));
  EXPECT_FALSE(mcr_mlp(and3, {0, 0, 0}, 1).yes);
  EXPECT_FALSE(mcr_mlp(and3, {1, 1, 1}, 0).yes);
}

TEST(MsrMlp, Examples) {
  auto phi = circuit_to_mlp(dnf_to_circuit(fixtures::phi6()));
  Instance x{1, 0, 1, 0, 1, 1};
  ASSERT_TRUE(eval_mlp(phi, x));
  auto v = msr_mlp(phi, x, 2);
  ASSERT_TRUE(v.yes);
  EXPECT_TRUE(csr_mlp(phi, x, *parse_partial("**1**1")));
  EXPECT_TRUE(check::msr_witness(phi, x, 2, v));

  auto and2 = circuit_to_mlp(fixtures::and_n(2));
  EXPECT_FALSE(msr_mlp(and2, {1, 1}, 1).yes);
  EXPECT_TRUE(msr_mlp(and2, {1, 1}, 2).yes);
}

TEST(CsrMlp, Examples) {
  auto or2 = circuit_to_mlp(fixtures::or_n(2));
  EXPECT_TRUE(csr_mlp(or2, {1, 0}, *parse_partial("1*")));
  EXPECT_FALSE(csr_mlp(or2, {1, 0}, *parse_partial("*0")));
  EXPECT_TRUE(csr_mlp(or2, {1, 0}, *parse_partial("10")));
}

TEST(CcMlp, Examples) {
  auto or2 = circuit_to_mlp(fixtures::or_n(2));
  auto and2 = circuit_to_mlp(fixtures::and_n(2));
  EXPECT_EQ(cc_mlp(or2, PartialInstance(2)), 3);
  EXPECT_EQ(cc_mlp(and2, PartialInstance(2)), 1);
  EXPECT_EQ(cc_mlp(and2, *parse_partial("11")), 1);
}

TEST(MlpEngine, BudgetReportsSize) {
  auto m = circuit_to_mlp(fixtures::and_n(30));
  try {
    cc_mlp(m, PartialInstance(30), 1000);
    FAIL() << "expected BudgetExceeded";
  } catch (const BudgetExceeded& e) {
    EXPECT_NE(std::string(e.what()).find("1073741824"), std::string::npos) << e.what();
  }
  EXPECT_THROW(msr_mlp(m, Instance::ones(30), 30, 1000), BudgetExceeded);
  EXPECT_THROW(mcr_mlp(m, Instance::ones(30), 30, 1000), BudgetExceeded);
}

// Queries on a compiled circuit agree with the oracle run on the circuit itself.
TEST(MlpEngine, CompiledCircuitsMatchCircuitOracle) {
  Rng rng(61);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = uniform(rng, 1, 7);
    auto c = random_bool_circuit(rng, n, uniform(rng, 1, 8));
    auto m = circuit_to_mlp(c);
    auto x = random_instance(rng, n);
    const std::size_t k = uniform(rng, 0, n);
    auto y = random_sub_partial(rng, x);
    auto z = random_partial(rng, n);
    ASSERT_EQ(mcr_mlp(m, x, k).yes, oracle_mcr(c, x, k).yes);
    ASSERT_EQ(msr_mlp(m, x, k).yes, oracle_msr(c, x, k).yes);
    ASSERT_EQ(csr_mlp(m, x, y), oracle_csr(c, x, y));
    ASSERT_EQ(cc_mlp(m, z), oracle_cc(c, z));
  }
}

class MlpAgreement : public ::testing::TestWithParam<suites::Q> {};

TEST_P(MlpAgreement, MatchesOracle) {
  auto t = suites::agreement<suites::MlpFamily>(GetParam(), 500, 300 + static_cast<int>(GetParam()));
  EXPECT_EQ(t.cases, 500u);
  EXPECT_TRUE(t.clean()) << t.disagreements << " disagreements, " << t.invariant_violations
                         << " invariant violations; first: " << t.first;
}

INSTANTIATE_TEST_SUITE_P(Queries, MlpAgreement,
                         ::testing::Values(suites::Q::mcr, suites::Q::msr, suites::Q::csr, suites::Q::cc),
                         [](const auto& info) { return std::string(suites::name(info.param)); });
