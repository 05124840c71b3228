#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "xq/detail/combinations.hpp"
#include "xq/errors.hpp"
#include "xq/instance.hpp"
#include "xq/rational.hpp"

namespace xq {

enum class GateKind { input, not_, and_, or_ };

struct BoolGate {
  GateKind kind = GateKind::input;
  std::size_t var = 0;  // 0-based, inputs only
  std::vector<std::size_t> children;

  friend bool operator==(const BoolGate&, const BoolGate&) = default;
};

struct BoolCircuit {
  std::size_t var_count = 0;
  std::vector<BoolGate> gates;
  std::size_t output = 0;

  std::size_t input(std::size_t var) { return push({GateKind::input, var, {}}); }
  std::size_t add_not(std::size_t g) { return push({GateKind::not_, 0, {g}}); }
  std::size_t add_and(std::vector<std::size_t> cs) { return push({GateKind::and_, 0, std::move(cs)}); }
  std::size_t add_or(std::vector<std::size_t> cs) { return push({GateKind::or_, 0, std::move(cs)}); }

  friend bool operator==(const BoolCircuit&, const BoolCircuit&) = default;

 private:
  std::size_t push(BoolGate g) {
    gates.push_back(std::move(g));
    return gates.size() - 1;
  }
};

struct MajEdge {
  std::size_t child = 0;
  unsigned mult = 1;

  friend bool operator==(const MajEdge&, const MajEdge&) = default;
};

struct MajGate {
  bool is_input = true;
  std::size_t var = 0;
  std::vector<MajEdge> children;

  unsigned fan_in() const {
    unsigned f = 0;
    for (const auto& e : children) f += e.mult;
    return f;
  }

  friend bool operator==(const MajGate&, const MajGate&) = default;
};

struct MajCircuit {
  std::size_t var_count = 0;
  std::vector<MajGate> gates;
  std::size_t output = 0;

  std::size_t input(std::size_t var) {
    gates.push_back({true, var, {}});
    return gates.size() - 1;
  }
  std::size_t add_maj(std::vector<MajEdge> cs) {
    gates.push_back({false, 0, std::move(cs)});
    return gates.size() - 1;
  }

  friend bool operator==(const MajCircuit&, const MajCircuit&) = default;
};

namespace detail {

inline std::size_t child_of(const BoolGate& g, std::size_t j) { return g.children[j]; }
inline std::size_t child_of(const MajGate& g, std::size_t j) { return g.children[j].child; }
inline bool is_input_gate(const BoolGate& g) { return g.kind == GateKind::input; }
inline bool is_input_gate(const MajGate& g) { return g.is_input; }

inline bool is_large(const BoolGate& g) {
  return (g.kind == GateKind::and_ || g.kind == GateKind::or_) && g.children.size() > 2;
}
inline bool is_large(const MajGate& g) { return !g.is_input && g.fan_in() > 3; }

}  // namespace detail

// Gates in the cone of `root`, children before parents. Returns nullopt on a
// cycle or a dangling child reference.
template <class Circuit>
std::optional<std::vector<std::size_t>> cone_order(const Circuit& c, std::size_t root) {
  const std::size_t n = c.gates.size();
  if (root >= n) return std::nullopt;
  std::vector<std::uint8_t> color(n, 0);
  std::vector<std::size_t> order;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
  color[root] = 1;
  while (!stack.empty()) {
    auto [u, j] = stack.back();
    const auto& g = c.gates[u];
    if (j < g.children.size()) {
      ++stack.back().second;
      std::size_t v = detail::child_of(g, j);
      if (v >= n || color[v] == 1) return std::nullopt;
      if (color[v] == 0) {
        color[v] = 1;
        stack.push_back({v, 0});
      }
      continue;
    }
    color[u] = 2;
    order.push_back(u);
    stack.pop_back();
  }
  return order;
}

template <class Circuit>
std::vector<std::string> validate_circuit(const Circuit& c) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const auto& g = c.gates[i];
    std::string tag = "gate " + std::to_string(i + 1);
    if (detail::is_input_gate(g) && g.var >= c.var_count) {
      out.push_back(tag + " reads variable " + std::to_string(g.var + 1) + " of " +
                    std::to_string(c.var_count));
    }
    for (std::size_t j = 0; j < g.children.size(); ++j) {
      if (detail::child_of(g, j) >= c.gates.size()) out.push_back(tag + " has a missing child");
    }
    if constexpr (std::is_same_v<Circuit, BoolCircuit>) {
      if (g.kind == GateKind::not_ && g.children.size() != 1) out.push_back(tag + " is a not with " + std::to_string(g.children.size()) + " children");
    } else {
      for (const auto& e : g.children) {
        if (e.mult == 0) out.push_back(tag + " has an edge of multiplicity 0");
      }
    }
  }
  if (c.output >= c.gates.size()) {
    out.push_back("output refers to a missing gate");
  } else if (out.empty()) {
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
      if (!cone_order(c, i)) {
        out.push_back("circuit has a cycle");
        break;
      }
    }
  }
  return out;
}

template <class Circuit>
void require_valid_circuit(const Circuit& c) {
  auto v = validate_circuit(c);
  if (!v.empty()) throw InvalidModel(std::move(v));
}

template <class Circuit>
std::vector<std::size_t> checked_order(const Circuit& c) {
  auto order = cone_order(c, c.output);
  if (!order) throw InvalidModel({"circuit is cyclic or has a missing gate"});
  return *order;
}

inline bool gate_value(const BoolGate& g, const std::vector<std::uint8_t>& val, const Instance& x) {
  switch (g.kind) {
    case GateKind::input: return x[g.var];
    case GateKind::not_: return !val[g.children[0]];
    case GateKind::and_:
      return std::all_of(g.children.begin(), g.children.end(), [&](std::size_t v) { return val[v] != 0; });
    case GateKind::or_:
      return std::any_of(g.children.begin(), g.children.end(), [&](std::size_t v) { return val[v] != 0; });
  }
  return false;
}

// Strict majority: fires iff 2 * (true inputs) > fan-in.
inline bool gate_value(const MajGate& g, const std::vector<std::uint8_t>& val, const Instance& x) {
  if (g.is_input) return x[g.var];
  unsigned on = 0;
  for (const auto& e : g.children) on += val[e.child] ? e.mult : 0;
  return 2 * on > g.fan_in();
}

// Values of every gate in `order` (other entries stay 0).
template <class Circuit>
std::vector<std::uint8_t> gate_values(const Circuit& c, const std::vector<std::size_t>& order,
                                      const Instance& x) {
  std::vector<std::uint8_t> val(c.gates.size(), 0);
  for (std::size_t u : order) val[u] = gate_value(c.gates[u], val, x);
  return val;
}

template <class Circuit>
bool eval_circuit(const Circuit& c, const Instance& x) {
  check_dim(c.var_count, x.dim());
  return gate_values(c, checked_order(c), x)[c.output] != 0;
}

struct DepthWeft {
  std::size_t depth = 0;
  std::size_t weft = 0;

  friend bool operator==(const DepthWeft&, const DepthWeft&) = default;
};

// Depth counts edges on the longest path into the output; weft counts large
// gates on any such path. Gates without children sit at depth 0.
template <class Circuit>
DepthWeft depth_and_weft(const Circuit& c) {
  auto order = checked_order(c);
  std::vector<std::size_t> depth(c.gates.size(), 0), weft(c.gates.size(), 0);
  for (std::size_t u : order) {
    const auto& g = c.gates[u];
    std::size_t d = 0, w = 0;
    for (std::size_t j = 0; j < g.children.size(); ++j) {
      std::size_t v = detail::child_of(g, j);
      d = std::max(d, depth[v] + 1);
      w = std::max(w, weft[v]);
    }
    depth[u] = d;
    weft[u] = w + (detail::is_large(g) ? 1 : 0);
  }
  return {depth[c.output], weft[c.output]};
}

inline std::size_t input_dim(const BoolCircuit& c) { return c.var_count; }
inline std::size_t input_dim(const MajCircuit& c) { return c.var_count; }
inline bool classify(const BoolCircuit& c, const Instance& x) { return eval_circuit(c, x); }
inline bool classify(const MajCircuit& c, const Instance& x) { return eval_circuit(c, x); }

// Weighted circuit satisfiability by enumerating every weight-k assignment in
// lexicographic order of the chosen variable sets.
template <class Circuit>
QueryVerdict wcs_brute(const Circuit& c, std::size_t k, std::uint64_t limit = 1u << 22) {
  const std::size_t n = c.var_count;
  if (k > n) return QueryVerdict::no();
  check_budget("weight-k assignments", binomial(n, k), limit);
  auto order = checked_order(c);
  QueryVerdict verdict;
  detail::for_each_combination(n, k, [&](const std::vector<std::size_t>& pick) {
    Instance x(n);
    for (std::size_t i : pick) x.set(i, true);
    if (!gate_values(c, order, x)[c.output]) return true;
    verdict = QueryVerdict::with(x);
    return false;
  });
  return verdict;
}

}  // namespace xq
