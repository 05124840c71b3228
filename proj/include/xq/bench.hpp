#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "xq/fbdd_engine.hpp"
#include "xq/mlp_engine.hpp"
#include "xq/perceptron_engine.hpp"
#include "xq/random_models.hpp"

namespace xq {

struct BenchRow {
  std::string model;
  std::string query;
  std::size_t size = 0;
  std::int64_t nanoseconds = 0;
  std::string result;
};

inline const char* kBenchHeader = "model,query,size,nanoseconds,result";

inline void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << kBenchHeader << "\n";
  for (const auto& r : rows) {
    out << r.model << ',' << r.query << ',' << r.size << ',' << r.nanoseconds << ',' << r.result << "\n";
  }
}

// Best of `reps` wall-clock timings; the result string comes from the last run.
inline std::int64_t time_best(std::size_t reps, const std::function<std::string()>& f, std::string& result) {
  std::int64_t best = -1;
  for (std::size_t i = 0; i < std::max<std::size_t>(reps, 1); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    result = f();
    auto t1 = std::chrono::steady_clock::now();
    auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
    if (best < 0 || ns < best) best = ns;
  }
  return best;
}

// cc_fbdd on random ordered diagrams (width 100), size = |M|.
inline std::vector<BenchRow> bench_cc_fbdd(const std::vector<std::size_t>& node_counts, std::uint64_t seed,
                                           std::size_t reps = 3) {
  std::vector<BenchRow> rows;
  Rng rng(seed);
  for (std::size_t nodes : node_counts) {
    const std::size_t width = std::min<std::size_t>(100, nodes);
    const std::size_t n = std::max<std::size_t>(1, nodes / width);
    Fbdd m = random_obdd(rng, n, width);
    PartialInstance y(n);
    std::string result;
    auto ns = time_best(reps, [&] { return to_string(cc_fbdd(m, y)); }, result);
    rows.push_back({"fbdd", "cc", m.size(), ns, result});
  }
  return rows;
}

// cc_mlp on one random network over `max_free` inputs, size = free features.
inline std::vector<BenchRow> bench_cc_mlp(std::size_t min_free, std::size_t max_free, std::uint64_t seed,
                                          std::size_t reps = 3) {
  std::vector<BenchRow> rows;
  Rng rng(seed);
  Mlp m = random_mlp(rng, max_free, {8, 4});
  Instance x = random_instance(rng, max_free);
  for (std::size_t f = min_free; f <= max_free; ++f) {
    PartialInstance y(x);
    for (std::size_t i = 0; i < f; ++i) y.set(i, Cell::free);
    std::string result;
    auto ns = time_best(reps, [&] { return to_string(cc_mlp(m, y, std::uint64_t{1} << 30)); }, result);
    rows.push_back({"mlp", "cc", f, ns, result});
  }
  return rows;
}

inline std::vector<BenchRow> bench_cc_perceptron(const std::vector<std::size_t>& dims, std::uint64_t seed,
                                                 std::size_t reps = 3) {
  std::vector<BenchRow> rows;
  Rng rng(seed);
  for (std::size_t d : dims) {
    Perceptron p = random_integer_perceptron(rng, d, 50);
    PartialInstance y(d);
    std::string result;
    auto ns = time_best(reps, [&] { return to_string(cc_perceptron(p, y)); }, result);
    rows.push_back({"perceptron", "cc", d, ns, result});
  }
  return rows;
}

}  // namespace xq
