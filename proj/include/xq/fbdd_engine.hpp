#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "xq/detail/combinations.hpp"
#include "xq/errors.hpp"
#include "xq/fbdd.hpp"
#include "xq/instance.hpp"
#include "xq/rational.hpp"

namespace xq {

inline constexpr std::uint64_t kDefaultFbddLimit = std::uint64_t{1} << 22;

// Minimum number of flips needed to reach the opposite class from node u,
// computed bottom-up; ties go to the hi child.
inline QueryVerdict mcr_fbdd(const Fbdd& m, const Instance& x, std::size_t k) {
  check_dim(m.dim, x.dim());
  constexpr std::size_t inf = std::numeric_limits<std::size_t>::max();
  const bool cls = eval_fbdd(m, x);
  auto leaf_cost = [&](NodeRef r) { return leaf_value(r) != cls ? std::size_t{0} : inf; };
  auto plus = [](std::size_t a, std::size_t b) { return a == inf ? inf : a + b; };

  std::vector<std::size_t> cost(m.nodes.size(), inf);
  auto cost_of = [&](NodeRef r) { return is_leaf(r) ? leaf_cost(r) : cost[static_cast<std::size_t>(r)]; };
  for (std::size_t u : fbdd_postorder(m)) {
    const auto& v = m.nodes[u];
    const bool xi = x[v.var - 1];
    std::size_t via_lo = plus(cost_of(v.lo), xi ? 1 : 0);
    std::size_t via_hi = plus(cost_of(v.hi), xi ? 0 : 1);
    cost[u] = std::min(via_lo, via_hi);
  }
  std::size_t best = cost_of(m.root);
  if (best == inf || best > k) return QueryVerdict::no();

  Instance y = x;
  NodeRef r = m.root;
  while (!is_leaf(r)) {
    const auto& v = m.nodes[static_cast<std::size_t>(r)];
    const bool xi = x[v.var - 1];
    std::size_t via_lo = plus(cost_of(v.lo), xi ? 1 : 0);
    std::size_t via_hi = plus(cost_of(v.hi), xi ? 0 : 1);
    bool go_hi = via_hi <= via_lo;
    y.set(v.var - 1, go_hi);
    r = go_hi ? v.hi : v.lo;
  }
  return QueryVerdict::with(y);
}

// Drops every edge that contradicts a defined cell of y and checks that all
// leaves still reachable agree.
inline bool csr_fbdd(const Fbdd& m, const Instance& x, const PartialInstance& y) {
  check_dim(m.dim, x.dim());
  require_completion(x, y);
  bool seen[2] = {false, false};
  std::vector<std::uint8_t> visited(m.nodes.size(), 0);
  std::vector<NodeRef> stack{m.root};
  while (!stack.empty()) {
    NodeRef r = stack.back();
    stack.pop_back();
    if (is_leaf(r)) {
      seen[leaf_value(r)] = true;
      if (seen[0] && seen[1]) return false;
      continue;
    }
    auto u = static_cast<std::size_t>(r);
    if (visited[u]) continue;
    visited[u] = 1;
    const auto& v = m.nodes[u];
    Cell c = y[v.var - 1];
    if (c != Cell::one) stack.push_back(v.lo);
    if (c != Cell::zero) stack.push_back(v.hi);
  }
  return true;
}

// q(u) is the fraction of completions (over the free features) that reach
// True from u; freeness makes the halving exact.
inline Integer cc_fbdd(const Fbdd& m, const PartialInstance& y) {
  check_dim(m.dim, y.dim());
  std::vector<Rational> q(m.nodes.size());
  auto q_of = [&](NodeRef r) -> Rational {
    if (is_leaf(r)) return leaf_value(r) ? Rational(1) : Rational(0);
    return q[static_cast<std::size_t>(r)];
  };
  for (std::size_t u : fbdd_postorder(m)) {
    const auto& v = m.nodes[u];
    switch (y[v.var - 1]) {
      case Cell::zero: q[u] = q_of(v.lo); break;
      case Cell::one: q[u] = q_of(v.hi); break;
      case Cell::free: {
        Rational sum = q_of(v.lo) + q_of(v.hi);
        q[u] = sum / 2;
        break;
      }
    }
  }
  Rational total = q_of(m.root) * Rational(pow2(y.free_count()));
  return total.get_num();
}

// Exact search over subsets of the features the diagram actually tests, in
// ascending size, each candidate certified with csr_fbdd.
inline QueryVerdict msr_fbdd(const Fbdd& m, const Instance& x, std::size_t k,
                             std::uint64_t limit = kDefaultFbddLimit) {
  check_dim(m.dim, x.dim());
  std::vector<bool> tested = fbdd_tested(m);
  std::vector<std::size_t> pos;
  for (std::size_t i = 1; i <= m.dim; ++i) {
    if (tested[i]) pos.push_back(i - 1);
  }
  const std::size_t top = std::min(k, pos.size());
  Integer need = 0;
  for (std::size_t s = 0; s <= top; ++s) need += binomial(pos.size(), s);
  check_budget("candidate sufficient reasons", need, limit);

  for (std::size_t s = 0; s <= top; ++s) {
    QueryVerdict found;
    detail::for_each_combination(pos.size(), s, [&](const std::vector<std::size_t>& pick) {
      std::vector<bool> keep(m.dim, false);
      for (std::size_t j : pick) keep[pos[j]] = true;
      PartialInstance y = PartialInstance::restrict(x, keep);
      if (!csr_fbdd(m, x, y)) return true;
      found = QueryVerdict::with(std::move(y));
      return false;
    });
    if (found.yes) return found;
  }
  return QueryVerdict::no();
}

}  // namespace xq
