#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <vector>

#include "xq/circuit.hpp"
#include "xq/compile.hpp"
#include "xq/errors.hpp"
#include "xq/fbdd.hpp"
#include "xq/instance.hpp"
#include "xq/mlp.hpp"
#include "xq/problems.hpp"

namespace xq {

template <class Model>
struct QueryInstance {
  Model model;
  Instance x;
  std::size_t k = 0;
};

using MlpQuery = QueryInstance<Mlp>;
using FbddQuery = QueryInstance<Fbdd>;

struct CsrQuery {
  Mlp model;
  Instance x;
  PartialInstance y;
  bool rejected = false;  // the probe instance was already negative
};

namespace detail {

// step(x - 1) over one input: flipping the single zero bit changes the class.
inline Mlp one_flip_positive() {
  Mlp m;
  m.input = 1;
  DenseLayer l(1, 1, Activation::step);
  l.w[0] = 1;
  l.b[0] = -1;
  m.layers.push_back(std::move(l));
  return m;
}

}  // namespace detail

// phi_G = AND over edges of (x_u OR x_v); MCR at 0^n with budget k asks for a
// vertex cover of size at most k.
inline MlpQuery vc_to_mcr(const Graph& g, std::size_t k) {
  if (auto v = validate_graph(g); !v.empty()) throw InvalidModel(std::move(v));
  if (g.edges.empty()) return {detail::one_flip_positive(), Instance(1), 1};
  BoolCircuit c;
  c.var_count = g.vertices;
  std::vector<std::size_t> in(g.vertices);
  for (std::size_t i = 0; i < g.vertices; ++i) in[i] = c.input(i);
  std::vector<std::size_t> clauses;
  for (const auto& [u, v] : g.edges) clauses.push_back(c.add_or({in[u], in[v]}));
  c.output = c.add_and(std::move(clauses));
  return {circuit_to_mlp(c), Instance(g.vertices), k};
}

// Topological order, smallest vertex first among the ready ones.
inline std::vector<std::size_t> topological_order(const Graph& g) {
  std::vector<std::size_t> indeg(g.vertices, 0);
  std::vector<std::vector<std::size_t>> out(g.vertices);
  for (const auto& [u, v] : g.edges) {
    out[u].push_back(v);
    ++indeg[v];
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t v = 0; v < g.vertices; ++v) {
    if (indeg[v] == 0) ready.push(v);
  }
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    std::size_t u = ready.top();
    ready.pop();
    order.push_back(u);
    for (std::size_t v : out[u]) {
      if (--indeg[v] == 0) ready.push(v);
    }
  }
  if (order.size() != g.vertices) throw PreconditionViolation("graph has a cycle");
  return order;
}

// Decision tree whose spine tests the vertices from last to first in
// topological order; leaving the spine at v (x_v = 0) enters a chain that is
// True iff some in-neighbour of v is 1. Sufficient reasons of 1^n are exactly
// the dominating sets.
inline FbddQuery domdag_to_msr(const Graph& dag, std::size_t k) {
  if (auto v = validate_graph(dag); !v.empty()) throw InvalidModel(std::move(v));
  auto order = topological_order(dag);
  std::vector<std::size_t> rank(dag.vertices);
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  std::vector<std::vector<std::size_t>> preds(dag.vertices);
  for (const auto& [u, v] : dag.edges) {
    if (std::find(preds[v].begin(), preds[v].end(), u) == preds[v].end()) preds[v].push_back(u);
  }

  Fbdd m;
  m.dim = dag.vertices;
  NodeRef below = kTrue;
  for (std::size_t v : order) {
    auto& ps = preds[v];
    std::sort(ps.begin(), ps.end(), [&](std::size_t a, std::size_t b) { return rank[a] < rank[b]; });
    NodeRef chain = kFalse;
    for (auto it = ps.rbegin(); it != ps.rend(); ++it) chain = m.add(*it + 1, chain, kTrue);
    below = m.add(v + 1, chain, below);
  }
  m.root = below;
  return {std::move(m), Instance::ones(dag.vertices), k};
}

// Every variable outside the core term is split into k+1 copies and the
// formula is conjoined over the k+1 renamings, so no set of k defined
// features can pin a split variable.
inline MlpQuery sic_to_msr(const Dnf& f, std::size_t k) {
  if (auto v = validate_dnf(f); !v.empty()) throw InvalidModel(std::move(v));
  if (f.terms.empty()) throw PreconditionViolation("formula has no terms");
  const auto& core = f.terms.back();
  if (k >= core.size()) throw PreconditionViolation("k must be smaller than the core term");

  std::vector<int> core_sign(f.vars + 1, 0);
  for (int lit : core) core_sign[static_cast<std::size_t>(std::abs(lit))] = lit > 0 ? 1 : -1;

  // first[v] is the first new index of variable v; core variables get one slot.
  std::vector<std::size_t> first(f.vars + 1);
  std::size_t next = 0;
  for (std::size_t v = 1; v <= f.vars; ++v) {
    first[v] = next;
    next += core_sign[v] ? 1 : k + 1;
  }

  BoolCircuit c;
  c.var_count = next;
  std::vector<std::size_t> in(next), neg(next, static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < next; ++i) in[i] = c.input(i);
  std::vector<std::size_t> copies;
  for (std::size_t copy = 0; copy <= k; ++copy) {
    std::vector<std::size_t> terms;
    for (const auto& t : f.terms) {
      std::vector<std::size_t> lits;
      for (int lit : t) {
        auto v = static_cast<std::size_t>(std::abs(lit));
        std::size_t idx = first[v] + (core_sign[v] ? 0 : copy);
        if (lit > 0) {
          lits.push_back(in[idx]);
        } else {
          if (neg[idx] == static_cast<std::size_t>(-1)) neg[idx] = c.add_not(in[idx]);
          lits.push_back(neg[idx]);
        }
      }
      terms.push_back(c.add_and(std::move(lits)));
    }
    copies.push_back(c.add_or(std::move(terms)));
  }
  c.output = copies.size() == 1 ? copies[0] : c.add_and(std::move(copies));

  Instance x(next);
  for (std::size_t v = 1; v <= f.vars; ++v) {
    if (core_sign[v] > 0) x.set(first[v], true);
  }
  return {circuit_to_mlp(c), std::move(x), k};
}

// CSR with y = bottom^n on a positive probe decides whether the formula is a
// tautology. The probe is 0^n; if it is negative the query is rejected.
inline CsrQuery taut_to_csr(const BoolCircuit& formula) {
  require_valid_circuit(formula);
  CsrQuery q{circuit_to_mlp(formula), Instance(formula.var_count), PartialInstance(formula.var_count)};
  q.rejected = !eval_circuit(formula, q.x);
  return q;
}

namespace detail {

// A t-layer network over one input whose MCR answer at 0 with k = 1 is fixed.
inline Mlp constant_answer(std::size_t layers, bool yes) {
  Mlp m;
  m.input = 1;
  for (std::size_t i = 1; i < layers; ++i) {
    DenseLayer id(1, 1, Activation::relu);
    id.w[0] = 1;
    m.layers.push_back(std::move(id));
  }
  DenseLayer out(1, 1, Activation::step);
  out.w[0] = yes ? 1 : 0;
  out.b[0] = -1;
  m.layers.push_back(std::move(out));
  return m;
}

}  // namespace detail

// Compiles a majority circuit of depth t to a t-layer rMLP and adds a fresh
// input v1 carried up by an identity chain; the output only fires when the
// chain is on, so a change of at most k+1 bits from 0^(n+1) must flip v1 and
// satisfy the circuit with at most k ones.
inline MlpQuery wcs_to_mcr(const MajCircuit& c, std::size_t k, std::uint64_t limit = std::uint64_t{1} << 22) {
  require_valid_circuit(c);
  const DepthWeft dw = depth_and_weft(c);
  if (dw.depth == 0) throw PreconditionViolation("circuit must have depth at least 1");
  const std::size_t t = dw.depth, n = c.var_count;
  if (n <= 2 * k) return {detail::constant_answer(t, wcs_brute(c, k, limit).yes), Instance(1), 1};

  Mlp base = majority_to_rmlp(c);
  Mlp m;
  m.input = n + 1;
  for (std::size_t i = 0; i < base.layers.size(); ++i) {
    const auto& src = base.layers[i];
    const bool last = i + 1 == base.layers.size();
    DenseLayer layer(src.in + 1, src.out + (last ? 0 : 1), src.act);
    // Row 0 of the first layer is v1; later layers keep the chain in the last row.
    const std::size_t shift = i == 0 ? 1 : 0;
    for (std::size_t r = 0; r < src.in; ++r) {
      for (std::size_t col = 0; col < src.out; ++col) layer.at(r + shift, col) = src.at(r, col);
    }
    for (std::size_t col = 0; col < src.out; ++col) layer.b[col] = src.b[col];
    const std::size_t chain_row = i == 0 ? 0 : src.in;
    if (!last) {
      layer.at(chain_row, src.out) = 1;
    } else {
      Rational total = 0;
      for (std::size_t r = 0; r < src.in; ++r) total += abs(src.at(r, 0));
      layer.at(chain_row, 0) = total;
      layer.b[0] = src.b[0] - total;
    }
    m.layers.push_back(std::move(layer));
  }
  return {std::move(m), Instance(n + 1), k + 1};
}

struct NormalizedWcs {
  MajCircuit circuit;
  std::size_t k = 0;
};

namespace detail {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace detail

inline constexpr std::size_t kMaxDnfInputs = 20;

// Each maximal connected region of small majority gates is replaced, per gate
// that leaves the region, by a two-level majority simulation of its minimal
// monotone DNF: And terms get (k+1)-fold edges plus padding from N, the Or gets
// parallel edges from u, and the root becomes Maj(old root, u).
inline NormalizedWcs normalize_maj(const MajCircuit& c, std::size_t k, std::size_t t, std::size_t depth_budget) {
  require_valid_circuit(c);
  const DepthWeft dw = depth_and_weft(c);
  if (dw.weft > t) throw PreconditionViolation("circuit weft exceeds t");
  if (dw.depth > depth_budget) {
    throw BudgetExceeded("circuit depth", Integer(static_cast<unsigned long>(dw.depth)),
                         Integer(static_cast<unsigned long>(depth_budget)));
  }
  if (k > c.var_count) throw PreconditionViolation("k exceeds the number of variables");
  const auto order = checked_order(c);
  for (std::size_t g : order) {
    if (!c.gates[g].is_input && c.gates[g].fan_in() == 0) throw PreconditionViolation("majority gate with no inputs");
  }

  const std::size_t gcount = c.gates.size();
  std::vector<bool> in_cone(gcount, false), small(gcount, false);
  for (std::size_t g : order) {
    in_cone[g] = true;
    small[g] = !c.gates[g].is_input && c.gates[g].fan_in() <= 3;
  }
  detail::UnionFind uf(gcount);
  std::vector<bool> feeds_outside(gcount, false);
  feeds_outside[c.output] = true;
  for (std::size_t g : order) {
    for (const auto& e : c.gates[g].children) {
      if (small[g] && small[e.child]) uf.unite(g, e.child);
      else feeds_outside[e.child] = true;
    }
  }

  MajCircuit out;
  const std::size_t n = c.var_count;
  std::vector<std::size_t> mapped(gcount, 0);
  std::optional<std::size_t> u_gate;
  std::vector<std::size_t> n_gates;
  auto u_input = [&] {
    if (!u_gate) u_gate = out.input(n);
    return *u_gate;
  };
  auto n_input = [&](std::size_t j) {
    while (n_gates.size() <= j) n_gates.push_back(out.input(n + 1 + n_gates.size()));
    return n_gates[j];
  };

  for (std::size_t g : order) {
    const auto& gate = c.gates[g];
    if (gate.is_input) {
      mapped[g] = out.input(gate.var);
      continue;
    }
    if (!small[g]) {
      std::vector<MajEdge> es;
      for (const auto& e : gate.children) es.push_back({mapped[e.child], e.mult});
      mapped[g] = out.add_maj(std::move(es));
      continue;
    }
    if (!feeds_outside[g]) continue;

    // Boundary of g's cone inside its region.
    const std::size_t region = uf.find(g);
    std::vector<std::size_t> inner, boundary;
    std::vector<std::uint8_t> seen(gcount, 0);
    std::vector<std::size_t> stack{g};
    seen[g] = 1;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      inner.push_back(v);
      for (const auto& e : c.gates[v].children) {
        if (seen[e.child]) continue;
        seen[e.child] = 1;
        if (small[e.child] && uf.find(e.child) == region) stack.push_back(e.child);
        else boundary.push_back(e.child);
      }
    }
    std::sort(boundary.begin(), boundary.end());
    if (boundary.size() > kMaxDnfInputs) {
      throw BudgetExceeded("small sub-circuit inputs", Integer(static_cast<unsigned long>(boundary.size())),
                           Integer(static_cast<unsigned long>(kMaxDnfInputs)));
    }
    std::vector<std::size_t> inner_order;
    for (std::size_t v : order) {
      if (seen[v] && std::find(inner.begin(), inner.end(), v) != inner.end()) inner_order.push_back(v);
    }

    const std::size_t b = boundary.size();
    std::vector<std::uint32_t> sat;
    std::vector<std::uint8_t> val(gcount, 0);
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << b); ++mask) {
      for (std::size_t j = 0; j < b; ++j) val[boundary[j]] = (mask >> j) & 1u;
      for (std::size_t v : inner_order) {
        unsigned on = 0;
        for (const auto& e : c.gates[v].children) on += val[e.child] ? e.mult : 0;
        val[v] = 2 * on > c.gates[v].fan_in();
      }
      if (val[g]) sat.push_back(mask);
    }
    std::vector<std::uint32_t> minimal;
    for (std::uint32_t s : sat) {
      bool has_subset = std::any_of(sat.begin(), sat.end(), [&](std::uint32_t r) { return r != s && (r & s) == r; });
      if (!has_subset) minimal.push_back(s);
    }

    std::vector<MajEdge> or_edges;
    for (std::uint32_t s : minimal) {
      std::vector<MajEdge> es;
      std::size_t l = 0;
      for (std::size_t j = 0; j < b; ++j) {
        if ((s >> j) & 1u) {
          es.push_back({mapped[boundary[j]], static_cast<unsigned>(k + 1)});
          ++l;
        }
      }
      for (std::size_t j = 0; j + 1 < l * (k + 1); ++j) es.push_back({n_input(j), 1});
      or_edges.push_back({out.add_maj(std::move(es)), 1});
    }
    const auto ell = static_cast<unsigned>(or_edges.size());
    or_edges.push_back({u_input(), ell});
    mapped[g] = out.add_maj(std::move(or_edges));
  }

  out.output = out.add_maj({{mapped[c.output], 1}, {u_input(), 1}});
  out.var_count = n + 1 + n_gates.size();
  return {std::move(out), k + 1};
}

}  // namespace xq
