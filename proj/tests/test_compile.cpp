#include <gtest/gtest.h>

#include "support/brute.hpp"

using namespace xq;

namespace {

template <class Source>
::testing::AssertionResult agrees_everywhere(const Source& c, const Mlp& m) {
  const std::size_t n = c.var_count;
  if (m.input != n) return ::testing::AssertionFailure() << "input width " << m.input << " != " << n;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
    if (eval_mlp(m, Instance::from_mask(n, a)) != brute::value(c, a)) {
      return ::testing::AssertionFailure() << "differs on " << Instance::from_mask(n, a).str();
    }
  }
  return ::testing::AssertionSuccess();
}

::testing::AssertionResult same_function(const Mlp& a, const Mlp& b) {
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << a.input); ++v) {
    auto x = Instance::from_mask(a.input, v);
    if (eval_mlp(a, x) != eval_mlp(b, x)) return ::testing::AssertionFailure() << "differs on " << x.str();
  }
  return ::testing::AssertionSuccess();
}

// Small integer relu networks with the given number of layers.
Mlp small_relu(Rng& rng, std::size_t n, std::size_t layers) {
  Mlp m;
  m.input = n;
  std::size_t prev = n;
  for (std::size_t i = 0; i < layers; ++i) {
    const bool last = i + 1 == layers;
    DenseLayer l(prev, last ? 1 : uniform(rng, 1, 2), last ? Activation::step : Activation::relu);
    for (auto& w : l.w) w = uniform_long(rng, -1, 1);
    for (auto& b : l.b) b = uniform_long(rng, -1, 1);
    prev = l.out;
    m.layers.push_back(std::move(l));
  }
  return m;
}

}  // namespace

TEST(CircuitToMlp, Not) {
  BoolCircuit c;
  c.var_count = 1;
  c.output = c.add_not(c.input(0));
  auto m = circuit_to_mlp(c);
  EXPECT_EQ(m.layers.size(), 2u);
  EXPECT_TRUE(agrees_everywhere(c, m));
}

TEST(CircuitToMlp, And3) { EXPECT_TRUE(agrees_everywhere(fixtures::and_n(3), circuit_to_mlp(fixtures::and_n(3)))); }

TEST(CircuitToMlp, Xor) {
  BoolCircuit c;
  c.var_count = 2;
  auto a = c.input(0), b = c.input(1);
  c.output = c.add_and({c.add_or({a, b}), c.add_not(c.add_and({a, b}))});
  auto m = circuit_to_mlp(c);
  EXPECT_TRUE(agrees_everywhere(c, m));
  EXPECT_EQ(cc_mlp(m, PartialInstance(2)), 2);
}

TEST(CircuitToMlp, GateTable) {
  auto n = relu_not();
  EXPECT_EQ(n.weights, std::vector<Rational>{Rational(-1)});
  EXPECT_EQ(n.bias, 1);
  auto a = relu_and(4);
  EXPECT_EQ(a.weights.size(), 4u);
  EXPECT_EQ(a.bias, -3);
}

TEST(CircuitToMlp, RandomCircuits) {
  Rng rng(71);
  for (int i = 0; i < 200; ++i) {
    auto c = random_bool_circuit(rng, uniform(rng, 1, 10), uniform(rng, 1, 12));
    auto m = circuit_to_mlp(c);
    ASSERT_TRUE(validate_mlp(m).empty());
    ASSERT_TRUE(agrees_everywhere(c, m)) << serialize(c);
  }
}

TEST(CircuitToMlp, PreservesModelCount) {
  Rng rng(72);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = uniform(rng, 1, 10);
    auto c = random_bool_circuit(rng, n, uniform(rng, 1, 12));
    EXPECT_EQ(cc_mlp(circuit_to_mlp(c), PartialInstance(n)), brute::count_sat(c));
  }
}

TEST(MajorityToRmlp, SingleGate) {
  auto c = fixtures::maj_n(3);
  auto m = majority_to_rmlp(c);
  EXPECT_EQ(m.layers.size(), 1u);
  EXPECT_TRUE(agrees_everywhere(c, m));
}

TEST(MajorityToRmlp, DepthTwo) {
  MajCircuit c;
  c.var_count = 7;
  std::vector<std::size_t> in;
  for (std::size_t i = 0; i < 7; ++i) in.push_back(c.input(i));
  auto g1 = c.add_maj({{in[0], 1}, {in[1], 1}, {in[2], 1}});
  auto g2 = c.add_maj({{in[3], 1}, {in[4], 1}, {in[5], 1}});
  c.output = c.add_maj({{g1, 1}, {g2, 1}, {in[6], 1}});
  auto m = majority_to_rmlp(c);
  EXPECT_EQ(m.layers.size(), 2u);
  EXPECT_TRUE(agrees_everywhere(c, m));
  EXPECT_TRUE(is_rmlp(m));
}

TEST(MajorityToRmlp, RandomCircuits) {
  Rng rng(73);
  for (int i = 0; i < 200; ++i) {
    auto c = random_maj_circuit(rng, uniform(rng, 1, 10), uniform(rng, 1, 10));
    auto m = majority_to_rmlp(c);
    ASSERT_TRUE(validate_mlp(m).empty());
    ASSERT_EQ(m.layers.size(), depth_and_weft(c).depth);
    ASSERT_TRUE(is_rmlp(m));
    ASSERT_TRUE(agrees_everywhere(c, m)) << serialize(c);
  }
}

// Every relu pair of a compiled gate differs by 0 or 1, and the difference is the gate's value.
TEST(MajorityToRmlp, PairInvariant) {
  Rng rng(74);
  std::size_t pairs_seen = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = uniform(rng, 1, 8);
    auto c = random_maj_circuit(rng, n, uniform(rng, 2, 10));
    auto trace = majority_to_rmlp_traced(c);
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
      auto hs = forward(trace.mlp, Instance::from_mask(n, a));
      for (std::size_t g = 0; g < c.gates.size(); ++g) {
        if (!trace.pairs[g]) continue;
        ++pairs_seen;
        auto [p, q] = *trace.pairs[g];
        Rational d = hs[p.layer][p.column] - hs[q.layer][q.column];
        ASSERT_TRUE(d == 0 || d == 1) << "gate " << g << " diff " << d.get_str();
        ASSERT_EQ(d == 1, brute::gate(c, g, a));
      }
    }
  }
  EXPECT_GT(pairs_seen, 0u);
}

TEST(ReluToStep, AndLike) {
  Mlp m;
  m.input = 2;
  DenseLayer h(2, 1, Activation::relu);
  h.w = {Rational(1), Rational(1)};
  h.b[0] = -1;
  DenseLayer o(1, 1, Activation::step);
  o.w[0] = 1;
  o.b[0] = -1;
  m.layers = {h, o};
  auto s = relu_to_step(m);
  EXPECT_EQ(s.layers.size(), m.layers.size());
  for (const auto& l : s.layers) EXPECT_EQ(l.act, Activation::step);
  EXPECT_TRUE(same_function(m, s));
}

TEST(ReluToStep, ScalingFactor) {
  Mlp m;
  m.input = 2;
  DenseLayer h(2, 1, Activation::relu);
  h.w = {Rational(2), Rational(-3)};
  DenseLayer o(1, 1, Activation::step);
  o.w[0] = 1;
  m.layers = {h, o};
  EXPECT_EQ(denominator_lcm(m), 1);
  m.layers[0].w = {make_rational(1, 2), make_rational(1, 3)};
  EXPECT_EQ(denominator_lcm(m), 6);
  EXPECT_TRUE(same_function(m, relu_to_step(m)));
}

TEST(ReluToStep, BudgetNamesReplication) {
  Rng rng(75);
  auto m = random_mlp(rng, 6, {6, 6, 6}, 9, 7);
  try {
    relu_to_step(m, 1000);
    FAIL() << "expected BudgetExceeded";
  } catch (const BudgetExceeded& e) {
    EXPECT_NE(std::string(e.what()).find("S="), std::string::npos) << e.what();
  }
}

TEST(ReluToStep, RandomNetworks) {
  Rng rng(76);
  for (int i = 0; i < 50; ++i) {
    auto m = small_relu(rng, uniform(rng, 1, 4), uniform(rng, 2, 3));
    auto s = relu_to_step(m);
    ASSERT_EQ(s.layers.size(), m.layers.size());
    ASSERT_TRUE(same_function(m, s)) << serialize(m);
  }
}

TEST(ReluToStep, CompiledMajorityCircuits) {
  Rng rng(77);
  int done = 0;
  for (int i = 0; i < 200 && done < 20; ++i) {
    auto c = random_maj_circuit(rng, uniform(rng, 1, 4), uniform(rng, 1, 3), 3, 1);
    auto m = majority_to_rmlp(c);
    if (m.layers.size() < 2) continue;
    try {
      auto s = relu_to_step(m, 2000);
      ASSERT_TRUE(agrees_everywhere(c, s));
      ++done;
    } catch (const BudgetExceeded&) {
    }
  }
  EXPECT_GT(done, 0);
}
