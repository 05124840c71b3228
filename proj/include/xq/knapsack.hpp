#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "xq/errors.hpp"
#include "xq/instance.hpp"
#include "xq/perceptron.hpp"
#include "xq/rational.hpp"

namespace xq {

inline constexpr std::uint64_t kDefaultDpLimit = std::uint64_t{1} << 24;

struct KnapsackInstance {
  std::vector<Integer> s;
  Integer k;

  friend bool operator==(const KnapsackInstance&, const KnapsackInstance&) = default;
};

class NoPositiveInstance : public Error {
 public:
  NoPositiveInstance() : Error("no completion is classified positive") {}
};

// Number of subsets of s whose sum is at most k. Counts are kept exact and the
// table rolls over the items, so only k+1 cells are live.
inline Integer count_knapsack_dp(const KnapsackInstance& inst, std::uint64_t limit = kDefaultDpLimit) {
  for (const auto& v : inst.s) {
    if (v < 0) throw PreconditionViolation("knapsack sizes must be natural numbers");
  }
  if (inst.k < 0) return 0;
  Integer cells = inst.k + 1;
  cells *= inst.s.size() + 1;
  check_budget("knapsack table cells", cells, limit);

  const std::size_t k = inst.k.get_ui();
  std::vector<Integer> dp(k + 1, Integer(1));
  for (const auto& sv : inst.s) {
    if (sv > inst.k) continue;
    const std::size_t s = sv.get_ui();
    for (std::size_t c = k + 1; c-- > s;) dp[c] += dp[c - s];
  }
  return dp[k];
}

// Subsets summing to exactly k, by differencing two knapsack counts.
inline Integer count_subset_sum(const std::vector<Integer>& s, const Integer& k,
                                std::uint64_t limit = kDefaultDpLimit) {
  if (k < 0) return 0;
  Integer upto = count_knapsack_dp({s, k}, limit);
  if (k == 0) return upto;
  Integer below = count_knapsack_dp({s, k - 1}, limit);
  Integer diff = upto - below;
  return diff;
}

// Completions of y that an integer perceptron labels positive correspond to
// knapsack solutions over the free features: flip each free feature away from
// the value that maximises its contribution and pay |w_i| for it.
inline KnapsackInstance perceptron_to_knapsack(const Perceptron& m, const PartialInstance& y) {
  check_dim(m.dim(), y.dim());
  if (!is_integer(m.b)) throw PreconditionViolation("perceptron bias must be an integer");
  Integer b_prime = m.b.get_num();
  Integer j = 0;
  KnapsackInstance out;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    if (!is_integer(m.w[i])) throw PreconditionViolation("perceptron weights must be integers");
    const Integer& wi = m.w[i].get_num();
    if (y[i] == Cell::free) {
      out.s.push_back(abs(wi));
      if (wi > 0) j += wi;
    } else if (y[i] == Cell::one) {
      b_prime += wi;
    }
  }
  out.k = j + b_prime;
  if (out.k < 0) throw NoPositiveInstance();
  return out;
}

}  // namespace xq
