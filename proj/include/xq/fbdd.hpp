#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "xq/errors.hpp"
#include "xq/instance.hpp"

namespace xq {

// A reference to a node: a non-negative index into Fbdd::nodes, or one of the
// two leaf sentinels.
using NodeRef = std::int64_t;
inline constexpr NodeRef kFalse = -1;
inline constexpr NodeRef kTrue = -2;

inline bool is_leaf(NodeRef r) { return r < 0; }
inline bool leaf_value(NodeRef r) { return r == kTrue; }

struct FbddNode {
  long id = 0;          // external name, used in files and diagnostics
  std::size_t var = 0;  // 1-based feature index
  NodeRef lo = kFalse;
  NodeRef hi = kFalse;

  friend bool operator==(const FbddNode&, const FbddNode&) = default;
};

struct Fbdd {
  std::size_t dim = 0;
  std::vector<FbddNode> nodes;
  NodeRef root = kFalse;

  // |M|: two edges per inner node.
  std::size_t size() const { return 2 * nodes.size(); }

  NodeRef add(std::size_t var, NodeRef lo, NodeRef hi) {
    nodes.push_back({static_cast<long>(nodes.size()) + 1, var, lo, hi});
    return static_cast<NodeRef>(nodes.size()) - 1;
  }

  static Fbdd constant(std::size_t dim, bool value) {
    Fbdd m;
    m.dim = dim;
    m.root = value ? kTrue : kFalse;
    return m;
  }

  friend bool operator==(const Fbdd&, const Fbdd&) = default;
};

namespace detail {

inline std::string fbdd_ref_name(const Fbdd& m, NodeRef r) {
  if (r == kTrue) return "T";
  if (r == kFalse) return "F";
  return std::to_string(m.nodes[static_cast<std::size_t>(r)].id);
}

}  // namespace detail

// Inner nodes reachable from the root, children before parents. Assumes the
// reference structure is in range and acyclic.
inline std::vector<std::size_t> fbdd_postorder(const Fbdd& m) {
  std::vector<std::size_t> order;
  if (is_leaf(m.root)) return order;
  std::vector<std::uint8_t> state(m.nodes.size(), 0);
  std::vector<std::pair<std::size_t, int>> stack{{static_cast<std::size_t>(m.root), 0}};
  state[static_cast<std::size_t>(m.root)] = 1;
  while (!stack.empty()) {
    auto& [u, step] = stack.back();
    if (step < 2) {
      NodeRef c = step == 0 ? m.nodes[u].lo : m.nodes[u].hi;
      ++step;
      if (!is_leaf(c) && state[static_cast<std::size_t>(c)] == 0) {
        state[static_cast<std::size_t>(c)] = 1;
        stack.push_back({static_cast<std::size_t>(c), 0});
      }
      continue;
    }
    order.push_back(u);
    stack.pop_back();
  }
  return order;
}

inline std::vector<std::string> validate_fbdd(const Fbdd& m) {
  std::vector<std::string> out;
  const std::size_t n = m.nodes.size();
  auto in_range = [&](NodeRef r) { return is_leaf(r) ? (r == kTrue || r == kFalse) : static_cast<std::size_t>(r) < n; };

  if (!in_range(m.root)) out.push_back("root refers to a missing node");
  bool refs_ok = true;
  for (const auto& v : m.nodes) {
    if (v.var < 1 || v.var > m.dim) {
      out.push_back("node " + std::to_string(v.id) + " tests feature " + std::to_string(v.var) +
                    " outside 1.." + std::to_string(m.dim));
    }
    if (!in_range(v.lo) || !in_range(v.hi)) {
      out.push_back("node " + std::to_string(v.id) + " has an edge to a missing node");
      refs_ok = false;
    }
  }
  if (!refs_ok) return out;

  // Acyclicity over all nodes, reachable or not.
  std::vector<std::uint8_t> color(n, 0);
  std::vector<std::size_t> topo;  // children before parents
  bool cyclic = false;
  for (std::size_t s = 0; s < n && !cyclic; ++s) {
    if (color[s]) continue;
    std::vector<std::pair<std::size_t, int>> stack{{s, 0}};
    color[s] = 1;
    while (!stack.empty() && !cyclic) {
      auto& [u, step] = stack.back();
      if (step < 2) {
        NodeRef c = step == 0 ? m.nodes[u].lo : m.nodes[u].hi;
        ++step;
        if (is_leaf(c)) continue;
        auto ci = static_cast<std::size_t>(c);
        if (color[ci] == 1) {
          out.push_back("cycle through node " + std::to_string(m.nodes[ci].id));
          cyclic = true;
        } else if (color[ci] == 0) {
          color[ci] = 1;
          stack.push_back({ci, 0});
        }
        continue;
      }
      color[u] = 2;
      topo.push_back(u);
      stack.pop_back();
    }
  }
  if (cyclic) return out;

  // below[u] = some node strictly below u testing label i, or -1.
  for (std::size_t label = 1; label <= m.dim; ++label) {
    std::vector<NodeRef> below(n, -1);
    for (std::size_t u : topo) {
      for (NodeRef c : {m.nodes[u].lo, m.nodes[u].hi}) {
        if (is_leaf(c) || below[u] >= 0) continue;
        auto ci = static_cast<std::size_t>(c);
        if (m.nodes[ci].var == label) below[u] = c;
        else if (below[ci] >= 0) below[u] = below[ci];
      }
      if (m.nodes[u].var == label && below[u] >= 0) {
        out.push_back("freeness: node " + std::to_string(m.nodes[u].id) + " and its descendant " +
                      detail::fbdd_ref_name(m, below[u]) + " both test feature " +
                      std::to_string(label));
      }
    }
  }
  return out;
}

inline void require_valid(const Fbdd& m) {
  auto v = validate_fbdd(m);
  if (!v.empty()) throw InvalidModel(std::move(v));
}

inline bool eval_fbdd(const Fbdd& m, const Instance& x) {
  check_dim(m.dim, x.dim());
  NodeRef r = m.root;
  while (!is_leaf(r)) {
    const FbddNode& v = m.nodes[static_cast<std::size_t>(r)];
    r = x[v.var - 1] ? v.hi : v.lo;
  }
  return leaf_value(r);
}

// Features (1-based) tested by some node reachable from the root.
inline std::vector<bool> fbdd_tested(const Fbdd& m) {
  std::vector<bool> used(m.dim + 1, false);
  for (std::size_t u : fbdd_postorder(m)) used[m.nodes[u].var] = true;
  return used;
}

inline Fbdd negate(Fbdd m) {
  auto flip = [](NodeRef& r) {
    if (r == kTrue) r = kFalse;
    else if (r == kFalse) r = kTrue;
  };
  flip(m.root);
  for (auto& v : m.nodes) {
    flip(v.lo);
    flip(v.hi);
  }
  return m;
}

inline std::size_t input_dim(const Fbdd& m) { return m.dim; }
inline bool classify(const Fbdd& m, const Instance& x) { return eval_fbdd(m, x); }

}  // namespace xq
