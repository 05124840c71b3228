#pragma once

// Reference semantics for the four queries, by exhaustive enumeration over
// bitmasks. Models are touched only through classify() and input_dim(); none of
// the engines' helpers are used here.

#include <bit>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>

#include "xq/errors.hpp"
#include "xq/instance.hpp"
#include "xq/rational.hpp"

namespace xq {

template <class M>
concept Classifier = requires(const M& m, const Instance& x) {
  { classify(m, x) } -> std::convertible_to<bool>;
  { input_dim(m) } -> std::convertible_to<std::size_t>;
};

inline constexpr std::uint64_t kDefaultOracleLimit = std::uint64_t{1} << 24;

namespace oracle_detail {

inline void guard(const char* what, std::uint64_t need, std::uint64_t limit, std::size_t n) {
  if (n >= 40 || need > limit) {
    Integer req = n >= 40 ? Integer(0) : Integer(std::to_string(need), 10);
    if (n >= 40) mpz_ui_pow_ui(req.get_mpz_t(), 2, n);
    throw BudgetExceeded(what, req, Integer(std::to_string(limit), 10));
  }
}

inline std::uint64_t pow3(std::size_t n) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < n; ++i) r *= 3;
  return r;
}

inline std::uint64_t mask_of(const Instance& x) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < x.dim(); ++i) m |= std::uint64_t{x[i]} << i;
  return m;
}

// Bits of `fill` are written, in order, into the positions of `free_mask`.
inline Instance scatter(std::size_t n, std::uint64_t base, std::uint64_t free_mask, std::uint64_t fill) {
  std::uint64_t bits = base & ~free_mask;
  for (std::size_t i = 0, j = 0; i < n; ++i) {
    if ((free_mask >> i) & 1u) bits |= ((fill >> j++) & 1u) << i;
  }
  return Instance::from_mask(n, bits);
}

template <Classifier M>
bool constant_on(const M& m, std::size_t n, std::uint64_t base, std::uint64_t free_mask, bool cls) {
  const auto f = static_cast<std::size_t>(std::popcount(free_mask));
  for (std::uint64_t fill = 0; fill < (std::uint64_t{1} << f); ++fill) {
    if (static_cast<bool>(classify(m, scatter(n, base, free_mask, fill))) != cls) return false;
  }
  return true;
}

inline void split(const PartialInstance& y, std::uint64_t& base, std::uint64_t& free_mask) {
  base = free_mask = 0;
  for (std::size_t i = 0; i < y.dim(); ++i) {
    if (y[i] == Cell::one) base |= std::uint64_t{1} << i;
    if (y[i] == Cell::free) free_mask |= std::uint64_t{1} << i;
  }
}

}  // namespace oracle_detail

// Closest instance of the other class within distance k, scanning all 2^n.
template <Classifier M>
QueryVerdict oracle_mcr(const M& m, const Instance& x, std::size_t k, std::uint64_t limit = kDefaultOracleLimit) {
  const std::size_t n = input_dim(m);
  check_dim(n, x.dim());
  oracle_detail::guard("oracle instances", std::uint64_t{1} << (n < 40 ? n : 0), limit, n);
  const bool cls = classify(m, x);
  const std::uint64_t xm = oracle_detail::mask_of(x);
  std::size_t best_d = k + 1;
  std::uint64_t best = 0;
  for (std::uint64_t ym = 0; ym < (std::uint64_t{1} << n); ++ym) {
    auto d = static_cast<std::size_t>(std::popcount(xm ^ ym));
    if (d >= best_d) continue;
    if (static_cast<bool>(classify(m, Instance::from_mask(n, ym))) == cls) continue;
    best_d = d;
    best = ym;
  }
  if (best_d > k) return QueryVerdict::no();
  return QueryVerdict::with(Instance::from_mask(n, best));
}

// Smallest set of defined features (scanning all 3^n subset/completion pairs).
template <Classifier M>
QueryVerdict oracle_msr(const M& m, const Instance& x, std::size_t k, std::uint64_t limit = kDefaultOracleLimit) {
  const std::size_t n = input_dim(m);
  check_dim(n, x.dim());
  oracle_detail::guard("oracle subset/completion pairs", oracle_detail::pow3(n < 40 ? n : 0), limit, n);
  const bool cls = classify(m, x);
  const std::uint64_t xm = oracle_detail::mask_of(x), all = (std::uint64_t{1} << n) - 1;
  std::size_t best_s = k + 1;
  std::uint64_t best = 0;
  for (std::uint64_t keep = 0; keep <= all; ++keep) {
    auto s = static_cast<std::size_t>(std::popcount(keep));
    if (s >= best_s) continue;
    if (!oracle_detail::constant_on(m, n, xm, all & ~keep, cls)) continue;
    best_s = s;
    best = keep;
  }
  if (best_s > k) return QueryVerdict::no();
  PartialInstance y(n);
  for (std::size_t i = 0; i < n; ++i) {
    if ((best >> i) & 1u) y.set(i, x[i] ? Cell::one : Cell::zero);
  }
  return QueryVerdict::with(y);
}

template <Classifier M>
bool oracle_csr(const M& m, const Instance& x, const PartialInstance& y, std::uint64_t limit = kDefaultOracleLimit) {
  const std::size_t n = input_dim(m);
  check_dim(n, x.dim());
  check_dim(n, y.dim());
  for (std::size_t i = 0; i < n; ++i) {
    if (y[i] != Cell::free && (y[i] == Cell::one) != x[i]) throw NotACompletion();
  }
  std::uint64_t base, free_mask;
  oracle_detail::split(y, base, free_mask);
  const auto f = static_cast<std::size_t>(std::popcount(free_mask));
  oracle_detail::guard("oracle completions", std::uint64_t{1} << f, limit, f);
  return oracle_detail::constant_on(m, n, base, free_mask, classify(m, x));
}

template <Classifier M>
Integer oracle_cc(const M& m, const PartialInstance& y, std::uint64_t limit = kDefaultOracleLimit) {
  const std::size_t n = input_dim(m);
  check_dim(n, y.dim());
  std::uint64_t base, free_mask;
  oracle_detail::split(y, base, free_mask);
  const auto f = static_cast<std::size_t>(std::popcount(free_mask));
  oracle_detail::guard("oracle completions", std::uint64_t{1} << f, limit, f);
  std::uint64_t count = 0;
  for (std::uint64_t fill = 0; fill < (std::uint64_t{1} << f); ++fill) {
    count += classify(m, oracle_detail::scatter(n, base, free_mask, fill)) ? 1 : 0;
  }
  return Integer(std::to_string(count), 10);
}

struct McrQuery { Instance x; std::size_t k; };
struct MsrQuery { Instance x; std::size_t k; };
struct CsrCheck { Instance x; PartialInstance y; };
struct CcQuery { PartialInstance y; };
using Query = std::variant<McrQuery, MsrQuery, CsrCheck, CcQuery>;
using QueryResult = std::variant<QueryVerdict, Integer>;

template <Classifier M>
QueryResult oracle_query(const M& m, const Query& q, std::uint64_t limit = kDefaultOracleLimit) {
  struct Visit {
    const M& m;
    std::uint64_t limit;
    QueryResult operator()(const McrQuery& q) const { return oracle_mcr(m, q.x, q.k, limit); }
    QueryResult operator()(const MsrQuery& q) const { return oracle_msr(m, q.x, q.k, limit); }
    QueryResult operator()(const CsrCheck& q) const {
      return oracle_csr(m, q.x, q.y, limit) ? QueryVerdict{true, {}} : QueryVerdict::no();
    }
    QueryResult operator()(const CcQuery& q) const { return oracle_cc(m, q.y, limit); }
  };
  return std::visit(Visit{m, limit}, q);
}

}  // namespace xq
