#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "xq/errors.hpp"
#include "xq/instance.hpp"
#include "xq/perceptron.hpp"
#include "xq/rational.hpp"

namespace xq {

enum class Activation { relu, step };

inline const char* to_string(Activation a) { return a == Activation::relu ? "relu" : "step"; }

// One layer h' = f(h W + b); W is in x out, row-major.
struct DenseLayer {
  std::size_t in = 0;
  std::size_t out = 0;
  std::vector<Rational> w;
  std::vector<Rational> b;
  Activation act = Activation::relu;

  DenseLayer() = default;
  DenseLayer(std::size_t in_dim, std::size_t out_dim, Activation a)
      : in(in_dim), out(out_dim), w(in_dim * out_dim), b(out_dim), act(a) {}

  Rational& at(std::size_t r, std::size_t c) { return w[r * out + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return w[r * out + c]; }

  friend bool operator==(const DenseLayer&, const DenseLayer&) = default;
};

// Layers chain by shape. The last layer is a single step unit. Hidden layers
// are usually relu; step hidden units are allowed so that step-only networks
// share the type.
struct Mlp {
  std::size_t input = 0;
  std::vector<DenseLayer> layers;

  std::size_t layer_count() const { return layers.size(); }

  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> d{input};
    for (const auto& l : layers) d.push_back(l.out);
    return d;
  }

  // Total unit count, inputs included.
  std::size_t neuron_count() const {
    std::size_t n = input;
    for (const auto& l : layers) n += l.out;
    return n;
  }

  friend bool operator==(const Mlp&, const Mlp&) = default;
};

inline std::vector<std::string> validate_mlp(const Mlp& m) {
  std::vector<std::string> out;
  if (m.layers.empty()) {
    out.push_back("network has no layers");
    return out;
  }
  std::size_t prev = m.input;
  for (std::size_t i = 0; i < m.layers.size(); ++i) {
    const auto& l = m.layers[i];
    std::string tag = "layer " + std::to_string(i + 1);
    if (l.in != prev) {
      out.push_back(tag + " expects " + std::to_string(l.in) + " inputs, previous width is " +
                    std::to_string(prev));
    }
    if (l.w.size() != l.in * l.out) out.push_back(tag + " weight matrix has the wrong size");
    if (l.b.size() != l.out) out.push_back(tag + " bias vector has the wrong size");
    prev = l.out;
  }
  if (m.layers.back().out != 1) out.push_back("output layer must have width 1");
  if (m.layers.back().act != Activation::step) out.push_back("output layer must use step");
  return out;
}

inline void require_valid(const Mlp& m) {
  auto v = validate_mlp(m);
  if (!v.empty()) throw InvalidModel(std::move(v));
}

inline std::vector<Rational> apply_layer(const DenseLayer& l, const std::vector<Rational>& h) {
  std::vector<Rational> z = l.b;
  for (std::size_t r = 0; r < l.in; ++r) {
    if (sgn(h[r]) == 0) continue;
    const bool unit = h[r] == 1;
    for (std::size_t c = 0; c < l.out; ++c) {
      const Rational& wrc = l.w[r * l.out + c];
      if (sgn(wrc) == 0) continue;
      if (unit) z[c] += wrc;
      else z[c] += h[r] * wrc;
    }
  }
  for (auto& v : z) {
    if (l.act == Activation::relu) {
      if (sgn(v) < 0) v = 0;
    } else {
      v = sgn(v) >= 0 ? 1 : 0;
    }
  }
  return z;
}

// Every layer's output, starting with the input itself.
inline std::vector<std::vector<Rational>> forward(const Mlp& m, const Instance& x) {
  check_dim(m.input, x.dim());
  std::vector<std::vector<Rational>> hs;
  std::vector<Rational> h(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) h[i] = x[i] ? 1 : 0;
  hs.push_back(h);
  for (const auto& l : m.layers) hs.push_back(apply_layer(l, hs.back()));
  return hs;
}

inline bool eval_mlp(const Mlp& m, const Instance& x) {
  check_dim(m.input, x.dim());
  std::vector<Rational> h(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) h[i] = x[i] ? 1 : 0;
  for (const auto& l : m.layers) h = apply_layer(l, h);
  return h.at(0) == 1;
}

inline Mlp perceptron_as_mlp(const Perceptron& p) {
  Mlp m;
  m.input = p.dim();
  DenseLayer l(p.dim(), 1, Activation::step);
  for (std::size_t i = 0; i < p.dim(); ++i) l.w[i] = p.w[i];
  l.b[0] = p.b;
  m.layers.push_back(std::move(l));
  return m;
}

inline std::size_t input_dim(const Mlp& m) { return m.input; }
inline bool classify(const Mlp& m, const Instance& x) { return eval_mlp(m, x); }

}  // namespace xq
