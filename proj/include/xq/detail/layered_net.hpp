#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "xq/errors.hpp"
#include "xq/mlp.hpp"
#include "xq/rational.hpp"

namespace xq::detail {

// A sparse network where every unit reads only from the level just below it.
// Units 0..inputs-1 are the inputs (level 0).
struct LayeredNet {
  struct Unit {
    std::size_t level = 0;
    std::vector<std::pair<std::size_t, Rational>> ins;
    Rational bias;
  };

  std::size_t inputs = 0;
  std::vector<Unit> units;

  explicit LayeredNet(std::size_t n) : inputs(n), units(n) {}

  std::size_t add(std::size_t level, std::vector<std::pair<std::size_t, Rational>> ins, Rational bias) {
    for (const auto& [src, w] : ins) {
      if (units[src].level + 1 != level) throw Error("layered net: edge skips a level");
    }
    units.push_back({level, std::move(ins), std::move(bias)});
    return units.size() - 1;
  }
};

struct UnitPos {
  std::size_t layer = 0;   // 0 = input layer
  std::size_t column = 0;
};

// Dense form of the units that feed the output, plus a single output unit
// (its own layer) reading `out_ins` from the top level. Inputs are always kept.
// pos[u] tells where unit u ended up; dropped units get layer = npos.
inline Mlp to_dense(const LayeredNet& net, const std::vector<std::pair<std::size_t, Rational>>& out_ins,
                    const Rational& out_bias, Activation hidden, std::vector<UnitPos>* pos = nullptr) {
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t top = 0;
  for (const auto& [u, w] : out_ins) top = std::max(top, net.units[u].level);
  for (const auto& [u, w] : out_ins) {
    if (net.units[u].level != top) throw Error("layered net: output reads from mixed levels");
  }

  std::vector<bool> live(net.units.size(), false);
  for (std::size_t i = 0; i < net.inputs; ++i) live[i] = true;
  std::vector<std::size_t> stack;
  for (const auto& [u, w] : out_ins) {
    if (!live[u]) {
      live[u] = true;
      stack.push_back(u);
    }
  }
  while (!stack.empty()) {
    std::size_t u = stack.back();
    stack.pop_back();
    for (const auto& [v, w] : net.units[u].ins) {
      if (!live[v]) {
        live[v] = true;
        stack.push_back(v);
      }
    }
  }

  std::vector<std::vector<std::size_t>> by_level(top + 1);
  std::vector<UnitPos> where(net.units.size(), {npos, 0});
  for (std::size_t u = 0; u < net.units.size(); ++u) {
    if (!live[u]) continue;
    auto lv = net.units[u].level;
    where[u] = {lv, by_level[lv].size()};
    by_level[lv].push_back(u);
  }

  Mlp m;
  m.input = net.inputs;
  for (std::size_t lv = 1; lv <= top; ++lv) {
    DenseLayer layer(by_level[lv - 1].size(), by_level[lv].size(), hidden);
    for (std::size_t c = 0; c < by_level[lv].size(); ++c) {
      const auto& unit = net.units[by_level[lv][c]];
      layer.b[c] = unit.bias;
      for (const auto& [src, w] : unit.ins) layer.at(where[src].column, c) += w;
    }
    m.layers.push_back(std::move(layer));
  }
  DenseLayer out(by_level[top].size(), 1, Activation::step);
  out.b[0] = out_bias;
  for (const auto& [src, w] : out_ins) out.at(where[src].column, 0) += w;
  m.layers.push_back(std::move(out));
  if (pos) *pos = std::move(where);
  return m;
}

}  // namespace xq::detail
