#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "xq/detail/combinations.hpp"
#include "xq/errors.hpp"
#include "xq/instance.hpp"
#include "xq/mlp.hpp"
#include "xq/rational.hpp"

namespace xq {

inline constexpr std::uint64_t kDefaultMlpLimit = std::uint64_t{1} << 22;

namespace detail {

inline bool all_completions_agree(const Mlp& m, const PartialInstance& y, bool cls) {
  bool ok = true;
  for_each_completion(y, [&](const Instance& z) {
    ok = eval_mlp(m, z) == cls;
    return ok;
  });
  return ok;
}

}  // namespace detail

inline QueryVerdict mcr_mlp(const Mlp& m, const Instance& x, std::size_t k,
                            std::uint64_t limit = kDefaultMlpLimit) {
  check_dim(m.input, x.dim());
  const std::size_t n = x.dim(), top = std::min(k, n);
  Integer need = 0;
  for (std::size_t s = 0; s <= top; ++s) need += binomial(n, s);
  check_budget("instances within distance k", need, limit);

  const bool cls = eval_mlp(m, x);
  for (std::size_t s = 1; s <= top; ++s) {
    QueryVerdict found;
    detail::for_each_combination(n, s, [&](const std::vector<std::size_t>& pick) {
      Instance y = x;
      for (std::size_t i : pick) y.flip(i);
      if (eval_mlp(m, y) == cls) return true;
      found = QueryVerdict::with(std::move(y));
      return false;
    });
    if (found.yes) return found;
  }
  return QueryVerdict::no();
}

inline bool csr_mlp(const Mlp& m, const Instance& x, const PartialInstance& y,
                    std::uint64_t limit = kDefaultMlpLimit) {
  check_dim(m.input, x.dim());
  require_completion(x, y);
  check_budget("completions", pow2(y.free_count()), limit);
  return detail::all_completions_agree(m, y, eval_mlp(m, x));
}

inline QueryVerdict msr_mlp(const Mlp& m, const Instance& x, std::size_t k,
                            std::uint64_t limit = kDefaultMlpLimit) {
  check_dim(m.input, x.dim());
  const std::size_t n = x.dim(), top = std::min(k, n);
  Integer need = 0;
  for (std::size_t s = 0; s <= top; ++s) need += binomial(n, s) * pow2(n - s);
  check_budget("candidate and completion evaluations", need, limit);

  const bool cls = eval_mlp(m, x);
  for (std::size_t s = 0; s <= top; ++s) {
    QueryVerdict found;
    detail::for_each_combination(n, s, [&](const std::vector<std::size_t>& pick) {
      std::vector<bool> keep(n, false);
      for (std::size_t i : pick) keep[i] = true;
      PartialInstance y = PartialInstance::restrict(x, keep);
      if (!detail::all_completions_agree(m, y, cls)) return true;
      found = QueryVerdict::with(std::move(y));
      return false;
    });
    if (found.yes) return found;
  }
  return QueryVerdict::no();
}

inline Integer cc_mlp(const Mlp& m, const PartialInstance& y, std::uint64_t limit = kDefaultMlpLimit) {
  check_dim(m.input, y.dim());
  check_budget("completions", pow2(y.free_count()), limit);
  std::uint64_t count = 0;
  for_each_completion(y, [&](const Instance& z) { count += eval_mlp(m, z); });
  return Integer(std::to_string(count), 10);
}

}  // namespace xq
