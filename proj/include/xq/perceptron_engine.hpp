#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "xq/errors.hpp"
#include "xq/instance.hpp"
#include "xq/knapsack.hpp"
#include "xq/perceptron.hpp"
#include "xq/rational.hpp"

namespace xq {

namespace detail {

// s(i) = w_i when x_i = 1 and -w_i otherwise.
inline std::vector<Rational> importance(const Perceptron& m, const Instance& x) {
  std::vector<Rational> s(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) s[i] = x[i] ? m.w[i] : Rational(-m.w[i]);
  return s;
}

// Feature order by importance, stable on the index.
inline std::vector<std::size_t> importance_order(const std::vector<Rational>& s, bool decreasing) {
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return decreasing ? s[a] > s[b] : s[a] < s[b];
  });
  return order;
}

inline Rational min0(const Rational& v) { return sgn(v) < 0 ? v : Rational(0); }
inline Rational max0(const Rational& v) { return sgn(v) > 0 ? v : Rational(0); }

}  // namespace detail

// Flipping feature i moves the score by -s(i). A positive instance flips the
// largest positive importances, a negative one the most negative.
inline QueryVerdict mcr_perceptron(const Perceptron& m, const Instance& x, std::size_t k) {
  check_dim(m.dim(), x.dim());
  const bool cls = eval_perceptron(m, x);
  auto s = detail::importance(m, x);
  auto order = detail::importance_order(s, cls);
  Instance y = x;
  Rational v = perceptron_value(m, x);
  std::size_t flipped = 0;
  for (std::size_t i : order) {
    if (flipped == k) break;
    if (cls ? sgn(s[i]) <= 0 : sgn(s[i]) >= 0) break;
    y.flip(i);
    ++flipped;
    v -= s[i];
    if ((sgn(v) >= 0) != cls) return QueryVerdict::with(y);
  }
  return QueryVerdict::no();
}

// Defines features greedily by importance until the worst completion keeps
// the class of x; the prefix length is the minimum size of a sufficient reason.
inline QueryVerdict msr_perceptron(const Perceptron& m, const Instance& x, std::size_t k) {
  check_dim(m.dim(), x.dim());
  const bool cls = eval_perceptron(m, x);
  auto s = detail::importance(m, x);
  auto order = detail::importance_order(s, cls);
  const Rational neg_b = -m.b;

  // psi starts with every feature free at its worst value for the class.
  Rational psi = 0;
  for (const auto& w : m.w) psi += cls ? detail::min0(w) : detail::max0(w);
  auto holds = [&] { return cls ? psi >= neg_b : psi < neg_b; };

  std::vector<bool> keep(m.dim(), false);
  std::size_t l = 0;
  while (!holds()) {
    if (l == order.size()) return QueryVerdict::no();  // unreachable: x fixes its own class
    std::size_t i = order[l++];
    psi -= cls ? detail::min0(m.w[i]) : detail::max0(m.w[i]);
    if (x[i]) psi += m.w[i];
    keep[i] = true;
  }
  if (l > k) return QueryVerdict::no();
  return QueryVerdict::with(PartialInstance::restrict(x, keep));
}

inline bool csr_perceptron(const Perceptron& m, const Instance& x, const PartialInstance& y) {
  check_dim(m.dim(), x.dim());
  require_completion(x, y);
  Rational b_prime = m.b, j1 = 0, j2 = 0;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    if (y[i] == Cell::one) b_prime += m.w[i];
    else if (y[i] == Cell::free) {
      j1 += detail::min0(m.w[i]);
      j2 += detail::max0(m.w[i]);
    }
  }
  const Rational target = -b_prime;
  return !(j1 < target && j2 >= target);
}

// Scales to integers by the lcm of all denominators, then counts through the
// knapsack transform.
inline Integer cc_perceptron(const Perceptron& m, const PartialInstance& y,
                             std::uint64_t limit = kDefaultDpLimit) {
  check_dim(m.dim(), y.dim());
  Integer l = m.b.get_den();
  for (const auto& w : m.w) l = lcm(l, w.get_den());
  Perceptron scaled;
  scaled.b = m.b * Rational(l);
  for (const auto& w : m.w) scaled.w.push_back(w * Rational(l));

  Rational best = scaled.b;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    if (y[i] == Cell::one || (y[i] == Cell::free && sgn(scaled.w[i]) > 0)) best += scaled.w[i];
  }
  if (best < 0) return 0;
  return count_knapsack_dp(perceptron_to_knapsack(scaled, y), limit);
}

}  // namespace xq
