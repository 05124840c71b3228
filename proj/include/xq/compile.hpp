#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xq/circuit.hpp"
#include "xq/detail/layered_net.hpp"
#include "xq/errors.hpp"
#include "xq/mlp.hpp"
#include "xq/rational.hpp"

namespace xq {

inline constexpr std::uint64_t kDefaultStepBudget = 1'000'000;

// One relu unit over Boolean inputs: relu(sum w_i x_i + bias).
struct ReluGateSpec {
  std::vector<Rational> weights;
  Rational bias;
};

inline ReluGateSpec relu_not() { return {{Rational(-1)}, Rational(1)}; }
inline ReluGateSpec relu_and(std::size_t n) {
  return {std::vector<Rational>(n, Rational(1)), Rational(1) - Rational(static_cast<long>(n))};
}
inline ReluGateSpec relu_identity() { return {{Rational(1)}, Rational(0)}; }

namespace detail {

// Circuit gates lowered to relu units, with identity chains inserted so that
// every edge spans exactly one level.
class ReluLowering {
 public:
  explicit ReluLowering(const BoolCircuit& c) : c_(c), net_(c.var_count), gate_unit_(c.gates.size()) {}

  std::size_t unit_for(std::size_t g) {
    if (gate_unit_[g]) return *gate_unit_[g];
    const auto& gate = c_.gates[g];
    std::size_t u = 0;
    switch (gate.kind) {
      case GateKind::input: u = gate.var; break;
      case GateKind::not_: u = make_not(unit_for(gate.children[0])); break;
      case GateKind::and_: {
        std::vector<std::size_t> ins;
        for (std::size_t ch : gate.children) ins.push_back(unit_for(ch));
        u = make_and(ins);
        break;
      }
      case GateKind::or_: {
        std::vector<std::size_t> negated;
        for (std::size_t ch : gate.children) negated.push_back(make_not(unit_for(ch)));
        u = make_not(make_and(negated));
        break;
      }
    }
    gate_unit_[g] = u;
    return u;
  }

  LayeredNet& net() { return net_; }

  std::size_t lift(std::size_t u, std::size_t level) {
    if (net_.units[u].level == level) return u;
    auto key = std::make_pair(u, level);
    if (auto it = lifts_.find(key); it != lifts_.end()) return it->second;
    std::size_t below = lift(u, level - 1);
    auto spec = relu_identity();
    std::size_t v = net_.add(level, {{below, spec.weights[0]}}, spec.bias);
    lifts_[key] = v;
    return v;
  }

 private:
  std::size_t make_not(std::size_t a) {
    auto spec = relu_not();
    std::size_t lv = net_.units[a].level + 1;
    return net_.add(lv, {{a, spec.weights[0]}}, spec.bias);
  }

  std::size_t make_and(const std::vector<std::size_t>& ins) {
    std::size_t lv = 0;
    for (std::size_t a : ins) lv = std::max(lv, net_.units[a].level);
    auto spec = relu_and(ins.size());
    std::vector<std::pair<std::size_t, Rational>> edges;
    for (std::size_t i = 0; i < ins.size(); ++i) edges.push_back({lift(ins[i], lv), spec.weights[i]});
    return net_.add(lv + 1, std::move(edges), spec.bias);
  }

  const BoolCircuit& c_;
  LayeredNet net_;
  std::vector<std::optional<std::size_t>> gate_unit_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> lifts_;
};

}  // namespace detail

// Not, And and (via De Morgan) Or become relu units; the output h feeds a step
// unit computing step(2h - 1).
inline Mlp circuit_to_mlp(const BoolCircuit& c) {
  require_valid_circuit(c);
  detail::ReluLowering low(c);
  for (std::size_t g : checked_order(c)) low.unit_for(g);
  std::size_t out = low.unit_for(c.output);
  return detail::to_dense(low.net(), {{out, Rational(2)}}, Rational(-1), Activation::relu);
}

// Where each majority gate's relu pair landed in the compiled network.
struct RmlpTrace {
  Mlp mlp;
  std::vector<std::optional<std::pair<detail::UnitPos, detail::UnitPos>>> pairs;
};

namespace detail {

class MajLowering {
 public:
  explicit MajLowering(const MajCircuit& c) : c_(c), net_(c.var_count), level_(c.gates.size(), 0) {}

  // A gate (or lifted copy) is either a single input unit or a relu pair whose
  // difference carries the Boolean value.
  struct Source {
    std::size_t first;
    std::optional<std::size_t> second;
  };

  std::size_t level(std::size_t g) const { return level_[g]; }

  void build(const std::vector<std::size_t>& order) {
    for (std::size_t g : order) {
      const auto& gate = c_.gates[g];
      if (gate.is_input) {
        source_[{g, 0}] = Source{gate.var, std::nullopt};
        continue;
      }
      if (gate.fan_in() == 0) throw PreconditionViolation("majority gate with no inputs");
      std::size_t lv = 0;
      for (const auto& e : gate.children) lv = std::max(lv, level_[e.child]);
      level_[g] = lv + 1;
      if (g == c_.output) continue;
      Integer half = floor_div2(Integer(gate.fan_in()));
      auto ins = inputs_of(gate, lv);
      std::size_t a = net_.add(lv + 1, ins, Rational(-half));
      std::size_t b = net_.add(lv + 1, ins, Rational(-half - 1));
      source_[{g, lv + 1}] = Source{a, b};
    }
  }

  std::vector<std::pair<std::size_t, Rational>> inputs_of(const MajGate& gate, std::size_t lv) {
    std::vector<std::pair<std::size_t, Rational>> ins;
    for (const auto& e : gate.children) {
      Source s = lift(e.child, lv);
      Rational mu(e.mult);
      ins.push_back({s.first, mu});
      if (s.second) ins.push_back({*s.second, -mu});
    }
    return ins;
  }

  // The gate's value available at `lv`, through unary majority pairs.
  Source lift(std::size_t g, std::size_t lv) {
    if (auto it = source_.find({g, lv}); it != source_.end()) return it->second;
    Source below = lift(g, lv - 1);
    std::vector<std::pair<std::size_t, Rational>> ins{{below.first, Rational(1)}};
    if (below.second) ins.push_back({*below.second, Rational(-1)});
    std::size_t a = net_.add(lv, ins, Rational(0));
    std::size_t b = net_.add(lv, ins, Rational(-1));
    Source s{a, b};
    source_[{g, lv}] = s;
    return s;
  }

  std::optional<Source> gate_source(std::size_t g) const {
    auto it = source_.find({g, level_[g]});
    if (it == source_.end()) return std::nullopt;
    return it->second;
  }

  LayeredNet& net() { return net_; }

 private:
  const MajCircuit& c_;
  LayeredNet net_;
  std::vector<std::size_t> level_;
  std::map<std::pair<std::size_t, std::size_t>, Source> source_;
};

}  // namespace detail

// Each inner majority gate of fan-in n becomes the pair relu(s - floor(n/2)),
// relu(s - floor(n/2) - 1), whose difference is the gate's value; the output
// gate becomes a step unit. Layer count equals circuit depth.
inline RmlpTrace majority_to_rmlp_traced(const MajCircuit& c) {
  require_valid_circuit(c);
  const auto& out_gate = c.gates[c.output];
  if (out_gate.is_input) throw PreconditionViolation("output of a majority circuit must be a gate");
  auto order = checked_order(c);
  detail::MajLowering low(c);
  low.build(order);

  std::size_t lv = low.level(c.output) - 1;
  auto ins = low.inputs_of(out_gate, lv);
  Integer half = floor_div2(Integer(out_gate.fan_in()));
  std::vector<detail::UnitPos> pos;
  RmlpTrace trace;
  trace.mlp = detail::to_dense(low.net(), ins, Rational(-half - 1), Activation::relu, &pos);
  trace.pairs.resize(c.gates.size());
  for (std::size_t g : order) {
    if (g == c.output || c.gates[g].is_input) continue;
    auto s = low.gate_source(g);
    if (s && s->second) trace.pairs[g] = std::make_pair(pos[s->first], pos[*s->second]);
  }
  return trace;
}

inline Mlp majority_to_rmlp(const MajCircuit& c) { return majority_to_rmlp_traced(c).mlp; }

// Largest number of decimal digits in any numerator or denominator.
inline std::size_t max_digits(const Mlp& m) {
  std::size_t d = 0;
  auto see = [&](const Rational& r) {
    d = std::max({d, decimal_digits(r.get_num()), decimal_digits(r.get_den())});
  };
  for (const auto& l : m.layers) {
    for (const auto& w : l.w) see(w);
    for (const auto& b : l.b) see(b);
  }
  return d;
}

// Digit allowance for a network with N units: logarithmic in N.
inline std::size_t rmlp_digit_cap(std::size_t neurons) {
  return 2 * decimal_digits(Integer(static_cast<unsigned long>(neurons))) + 2;
}

inline bool is_rmlp(const Mlp& m) { return max_digits(m) <= rmlp_digit_cap(m.neuron_count()); }

inline Integer denominator_lcm(const Mlp& m) {
  Integer l = 1;
  for (const auto& layer : m.layers) {
    for (const auto& w : layer.w) l = lcm(l, w.get_den());
    for (const auto& b : layer.b) l = lcm(l, b.get_den());
  }
  return l;
}

// Replication factor for relu_to_step: ((D+1) C L)^layers, D the widest layer
// (inputs included), C the largest absolute numerator (at least 1).
inline Integer step_replication(const Mlp& m) {
  Integer l = denominator_lcm(m);
  std::size_t width = m.input;
  Integer c = 1;
  for (const auto& layer : m.layers) {
    width = std::max(width, layer.out);
    for (const auto& w : layer.w) c = std::max(c, Integer(abs(w.get_num())));
    for (const auto& b : layer.b) c = std::max(c, Integer(abs(b.get_num())));
  }
  Integer base = Integer(static_cast<unsigned long>(width + 1)) * c * l;
  return pow(base, static_cast<unsigned long>(m.layers.size()));
}

// Scale to integers (weights by L, layer-i biases by L^i) so every hidden value
// is an integer in [0, S]; then relu(z) = sum_{j=1..S} step(z - j) and each
// hidden unit becomes S step units sharing its edges.
inline Mlp relu_to_step(const Mlp& m, std::uint64_t budget = kDefaultStepBudget) {
  require_valid(m);
  for (std::size_t i = 0; i + 1 < m.layers.size(); ++i) {
    if (m.layers[i].act != Activation::relu) throw PreconditionViolation("hidden layers must be relu");
  }
  const Integer l = denominator_lcm(m);
  const Integer s_big = step_replication(m);
  std::size_t hidden = 0;
  for (std::size_t i = 0; i + 1 < m.layers.size(); ++i) hidden += m.layers[i].out;
  Integer need = s_big * Integer(static_cast<unsigned long>(hidden));
  if (hidden > 0) check_budget(("step copies, S=" + s_big.get_str()).c_str(), need, budget);
  const std::size_t s = hidden > 0 ? s_big.get_ui() : 1;

  Mlp out;
  out.input = m.input;
  Integer lpow = 1;
  for (std::size_t i = 0; i < m.layers.size(); ++i) {
    const auto& src = m.layers[i];
    lpow *= l;
    const bool last = i + 1 == m.layers.size();
    const std::size_t rep_in = i == 0 ? 1 : s;  // copies per source row
    const std::size_t rep_out = last ? 1 : s;
    DenseLayer layer(src.in * rep_in, src.out * rep_out, Activation::step);
    for (std::size_t c = 0; c < src.out; ++c) {
      Rational bias = src.b[c] * Rational(lpow);
      for (std::size_t j = 0; j < rep_out; ++j) {
        std::size_t col = c * rep_out + j;
        layer.b[col] = last ? bias : Rational(bias - static_cast<long>(j + 1));
        for (std::size_t r = 0; r < src.in; ++r) {
          const Rational& w = src.at(r, c);
          if (sgn(w) == 0) continue;
          Rational scaled = w * Rational(l);
          for (std::size_t t = 0; t < rep_in; ++t) layer.at(r * rep_in + t, col) = scaled;
        }
      }
    }
    out.layers.push_back(std::move(layer));
  }
  return out;
}

}  // namespace xq
