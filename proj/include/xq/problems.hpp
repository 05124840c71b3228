#pragma once

#include <cstddef>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "xq/circuit.hpp"
#include "xq/errors.hpp"

namespace xq {

// Vertices are 0-based here and 1-based in files.
struct Graph {
  std::size_t vertices = 0;
  bool directed = false;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  friend bool operator==(const Graph&, const Graph&) = default;
};

// Literals are signed 1-based variable numbers: 3 is x3, -3 is not x3.
// The last term is the core.
struct Dnf {
  std::size_t vars = 0;
  std::vector<std::vector<int>> terms;

  friend bool operator==(const Dnf&, const Dnf&) = default;
};

inline std::vector<std::string> validate_graph(const Graph& g) {
  std::vector<std::string> out;
  for (const auto& [u, v] : g.edges) {
    if (u >= g.vertices || v >= g.vertices) {
      out.push_back("edge " + std::to_string(u + 1) + " " + std::to_string(v + 1) + " names a missing vertex");
    }
  }
  return out;
}

inline std::vector<std::string> validate_dnf(const Dnf& f) {
  std::vector<std::string> out;
  for (const auto& t : f.terms) {
    for (int lit : t) {
      if (lit == 0 || static_cast<std::size_t>(std::abs(lit)) > f.vars) {
        out.push_back("literal " + std::to_string(lit) + " is out of range");
      }
    }
  }
  return out;
}

inline bool eval_dnf(const Dnf& f, const Instance& x) {
  check_dim(f.vars, x.dim());
  for (const auto& t : f.terms) {
    bool sat = true;
    for (int lit : t) {
      bool v = x[static_cast<std::size_t>(std::abs(lit)) - 1];
      if (v != (lit > 0)) {
        sat = false;
        break;
      }
    }
    if (sat) return true;
  }
  return false;
}

// OR of ANDs of literals; inputs are shared per variable.
inline BoolCircuit dnf_to_circuit(const Dnf& f) {
  if (auto v = validate_dnf(f); !v.empty()) throw InvalidModel(std::move(v));
  BoolCircuit c;
  c.var_count = f.vars;
  std::vector<std::size_t> in(f.vars), neg(f.vars, static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < f.vars; ++i) in[i] = c.input(i);
  std::vector<std::size_t> terms;
  for (const auto& t : f.terms) {
    std::vector<std::size_t> lits;
    for (int lit : t) {
      auto i = static_cast<std::size_t>(std::abs(lit)) - 1;
      if (lit > 0) {
        lits.push_back(in[i]);
      } else {
        if (neg[i] == static_cast<std::size_t>(-1)) neg[i] = c.add_not(in[i]);
        lits.push_back(neg[i]);
      }
    }
    terms.push_back(c.add_and(std::move(lits)));
  }
  c.output = c.add_or(std::move(terms));
  return c;
}

}  // namespace xq
