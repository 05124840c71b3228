#pragma once

#include <cstddef>
#include <vector>

#include "xq/errors.hpp"
#include "xq/instance.hpp"
#include "xq/rational.hpp"

namespace xq {

struct Perceptron {
  std::vector<Rational> w;
  Rational b;

  std::size_t dim() const { return w.size(); }

  friend bool operator==(const Perceptron&, const Perceptron&) = default;
};

inline Rational perceptron_value(const Perceptron& m, const Instance& x) {
  check_dim(m.dim(), x.dim());
  Rational v = m.b;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (x[i]) v += m.w[i];
  }
  return v;
}

inline bool eval_perceptron(const Perceptron& m, const Instance& x) {
  return perceptron_value(m, x) >= 0;
}

inline std::size_t input_dim(const Perceptron& m) { return m.dim(); }
inline bool classify(const Perceptron& m, const Instance& x) { return eval_perceptron(m, x); }

}  // namespace xq
