#pragma once

// Random generators for models, circuits and instances, shared by the tests and
// the bench subcommand.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "xq/circuit.hpp"
#include "xq/fbdd.hpp"
#include "xq/instance.hpp"
#include "xq/mlp.hpp"
#include "xq/perceptron.hpp"
#include "xq/problems.hpp"
#include "xq/rational.hpp"

namespace xq {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline long uniform_long(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline Instance random_instance(Rng& rng, std::size_t n) {
  Instance x(n);
  for (std::size_t i = 0; i < n; ++i) x.set(i, coin(rng));
  return x;
}

inline PartialInstance random_partial(Rng& rng, std::size_t n, double p_free = 0.5) {
  PartialInstance y(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!coin(rng, p_free)) y.set(i, coin(rng) ? Cell::one : Cell::zero);
  }
  return y;
}

// A partial instance that x completes.
inline PartialInstance random_sub_partial(Rng& rng, const Instance& x, double p_free = 0.5) {
  PartialInstance y(x);
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (coin(rng, p_free)) y.set(i, Cell::free);
  }
  return y;
}

inline Rational random_rational(Rng& rng, long max_num, long max_den) {
  Rational r(uniform_long(rng, -max_num, max_num), uniform_long(rng, 1, max_den));
  r.canonicalize();
  return r;
}

// Each new node picks children among earlier nodes whose label sets avoid its
// own label, which keeps the diagram free. Unreachable nodes are dropped.
inline Fbdd random_fbdd(Rng& rng, std::size_t n, std::size_t max_nodes) {
  Fbdd raw;
  raw.dim = n;
  if (n == 0 || max_nodes == 0) return Fbdd::constant(n, coin(rng));
  std::vector<std::uint64_t> labels;
  const std::size_t count = uniform(rng, 1, max_nodes);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t var = uniform(rng, 1, n);
    std::uint64_t bit = std::uint64_t{1} << (var - 1);
    std::vector<std::size_t> ok;
    for (std::size_t j = 0; j < labels.size(); ++j) {
      if (!(labels[j] & bit)) ok.push_back(j);
    }
    auto pick = [&]() -> NodeRef {
      if (ok.empty() || coin(rng, 0.3)) return coin(rng) ? kTrue : kFalse;
      return static_cast<NodeRef>(ok[uniform(rng, 0, ok.size() - 1)]);
    };
    NodeRef lo = pick(), hi = pick();
    std::uint64_t set = bit;
    for (NodeRef r : {lo, hi}) {
      if (!is_leaf(r)) set |= labels[static_cast<std::size_t>(r)];
    }
    labels.push_back(set);
    raw.add(var, lo, hi);
  }
  raw.root = static_cast<NodeRef>(raw.nodes.size() - 1);

  // Keep what the root reaches, renumbered in postorder.
  auto order = fbdd_postorder(raw);
  std::vector<NodeRef> remap(raw.nodes.size(), kFalse);
  Fbdd m;
  m.dim = n;
  auto map_ref = [&](NodeRef r) { return is_leaf(r) ? r : remap[static_cast<std::size_t>(r)]; };
  for (std::size_t u : order) {
    const auto& v = raw.nodes[u];
    remap[u] = m.add(v.var, map_ref(v.lo), map_ref(v.hi));
  }
  m.root = map_ref(raw.root);
  return m;
}

// Ordered diagram with levels x1..xn and up to `width` nodes per level.
inline Fbdd random_obdd(Rng& rng, std::size_t n, std::size_t width) {
  Fbdd m;
  m.dim = n;
  std::vector<NodeRef> below;  // nodes of the next level down
  for (std::size_t var = n; var >= 1; --var) {
    std::vector<NodeRef> level;
    for (std::size_t j = 0; j < width; ++j) {
      auto pick = [&]() -> NodeRef {
        if (below.empty() || coin(rng, 0.05)) return coin(rng) ? kTrue : kFalse;
        return below[uniform(rng, 0, below.size() - 1)];
      };
      level.push_back(m.add(var, pick(), pick()));
    }
    below = std::move(level);
  }
  m.root = below.empty() ? kTrue : below[0];
  return m;
}

inline Perceptron random_perceptron(Rng& rng, std::size_t n, long max_num = 64, long max_den = 64) {
  Perceptron p;
  for (std::size_t i = 0; i < n; ++i) p.w.push_back(random_rational(rng, max_num, max_den));
  p.b = random_rational(rng, max_num, max_den);
  return p;
}

inline Perceptron random_integer_perceptron(Rng& rng, std::size_t n, long max_abs = 20) {
  return random_perceptron(rng, n, max_abs, 1);
}

// Hidden relu layers of the given widths, then one step unit.
inline Mlp random_mlp(Rng& rng, std::size_t n, const std::vector<std::size_t>& hidden, long max_num = 3,
                      long max_den = 2) {
  Mlp m;
  m.input = n;
  std::size_t prev = n;
  auto fill = [&](DenseLayer& l) {
    for (auto& w : l.w) w = coin(rng, 0.25) ? Rational(0) : random_rational(rng, max_num, max_den);
    for (auto& b : l.b) b = random_rational(rng, max_num, max_den);
  };
  for (std::size_t w : hidden) {
    DenseLayer l(prev, w, Activation::relu);
    fill(l);
    m.layers.push_back(std::move(l));
    prev = w;
  }
  DenseLayer out(prev, 1, Activation::step);
  fill(out);
  m.layers.push_back(std::move(out));
  return m;
}

inline BoolCircuit random_bool_circuit(Rng& rng, std::size_t n, std::size_t gates) {
  BoolCircuit c;
  c.var_count = n;
  for (std::size_t i = 0; i < n; ++i) c.input(i);
  for (std::size_t g = 0; g < gates; ++g) {
    const std::size_t have = c.gates.size();
    auto any = [&] { return uniform(rng, 0, have - 1); };
    switch (uniform(rng, 0, 2)) {
      case 0: c.add_not(any()); break;
      case 1:
      case 2: {
        std::vector<std::size_t> cs(uniform(rng, 1, 4));
        for (auto& v : cs) v = any();
        if (coin(rng)) c.add_and(std::move(cs));
        else c.add_or(std::move(cs));
      }
    }
  }
  c.output = c.gates.size() - 1;
  return c;
}

// Gates draw fan-in 1..max_fan with multiplicities 1..2; the last gate is the
// output, so the circuit always has depth at least 1.
inline MajCircuit random_maj_circuit(Rng& rng, std::size_t n, std::size_t gates, std::size_t max_fan = 5,
                                     unsigned max_mult = 2) {
  MajCircuit c;
  c.var_count = n;
  for (std::size_t i = 0; i < n; ++i) c.input(i);
  for (std::size_t g = 0; g < std::max<std::size_t>(gates, 1); ++g) {
    const std::size_t have = c.gates.size();
    std::vector<MajEdge> es;
    const std::size_t fan = uniform(rng, 1, max_fan);
    for (std::size_t j = 0; j < fan; ++j) {
      std::size_t child = uniform(rng, 0, have - 1);
      auto mult = static_cast<unsigned>(uniform(rng, 1, max_mult));
      auto it = std::find_if(es.begin(), es.end(), [&](const MajEdge& e) { return e.child == child; });
      if (it != es.end()) it->mult += mult;
      else es.push_back({child, mult});
    }
    c.add_maj(std::move(es));
  }
  c.output = c.gates.size() - 1;
  return c;
}

inline Graph random_graph(Rng& rng, std::size_t n, double p) {
  Graph g;
  g.vertices = n;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (coin(rng, p)) g.edges.push_back({u, v});
    }
  }
  return g;
}

// Edges only go from lower to higher vertex under a random relabelling.
inline Graph random_dag(Rng& rng, std::size_t n, double p) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  Graph g;
  g.vertices = n;
  g.directed = true;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (coin(rng, p)) g.edges.push_back({perm[u], perm[v]});
    }
  }
  return g;
}

inline Dnf random_dnf(Rng& rng, std::size_t n, std::size_t terms, std::size_t max_len) {
  Dnf f;
  f.vars = n;
  for (std::size_t t = 0; t < terms; ++t) {
    std::vector<int> vars(n);
    for (std::size_t i = 0; i < n; ++i) vars[i] = static_cast<int>(i + 1);
    std::shuffle(vars.begin(), vars.end(), rng);
    std::vector<int> term;
    const std::size_t len = uniform(rng, 1, std::min(max_len, n));
    for (std::size_t i = 0; i < len; ++i) term.push_back(coin(rng) ? vars[i] : -vars[i]);
    f.terms.push_back(std::move(term));
  }
  return f;
}

}  // namespace xq
