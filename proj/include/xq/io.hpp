#pragma once

// Line-oriented text formats. '#' starts a comment; blank lines are ignored.
// Ids in files are 1-based and arbitrary for nodes and gates.

#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "xq/circuit.hpp"
#include "xq/errors.hpp"
#include "xq/fbdd.hpp"
#include "xq/mlp.hpp"
#include "xq/perceptron.hpp"
#include "xq/problems.hpp"
#include "xq/rational.hpp"

namespace xq {

namespace io_detail {

struct Token {
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

struct Line {
  std::vector<Token> tokens;
  std::size_t number = 0;

  const Token& at(std::size_t i) const {
    if (i >= tokens.size()) {
      const Token& last = tokens.back();
      throw ParseError(number, last.column + last.text.size(), "missing field after '" + last.text + "'");
    }
    return tokens[i];
  }
  const std::string& head() const { return tokens[0].text; }
};

[[noreturn]] inline void fail(const Token& t, const std::string& msg) { throw ParseError(t.line, t.column, msg); }

inline std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{{}, number};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
      std::size_t start = i;
      while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' && raw[i] != '\r') ++i;
      if (i > start) line.tokens.push_back({std::string(raw.substr(start, i - start)), number, start + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    pos = end + 1;
  }
  return lines;
}

inline std::size_t to_size(const Token& t, std::string_view s) {
  auto v = parse_integer(s);
  if (!v || *v < 0 || !v->fits_ulong_p()) fail(t, "expected a natural number, got '" + std::string(s) + "'");
  return v->get_ui();
}
inline std::size_t to_size(const Token& t) { return to_size(t, t.text); }

inline long to_id(const Token& t, std::string_view s) {
  auto v = parse_integer(s);
  if (!v || !v->fits_slong_p()) fail(t, "expected an id, got '" + std::string(s) + "'");
  return v->get_si();
}

inline Rational to_rational(const Token& t) {
  auto r = parse_rational(t.text);
  if (!r) fail(t, "expected a rational, got '" + t.text + "'");
  return *r;
}

// "key=value" header field.
inline std::string_view field(const Token& t, std::string_view key) {
  std::string_view s = t.text;
  if (s.size() <= key.size() + 1 || s.substr(0, key.size()) != key || s[key.size()] != '=') {
    fail(t, "expected " + std::string(key) + "=...");
  }
  return s.substr(key.size() + 1);
}

inline const Line& header(const std::vector<Line>& lines, std::string_view kind) {
  if (lines.empty()) throw ParseError(1, 1, "empty input, expected '" + std::string(kind) + "'");
  const Line& h = lines[0];
  if (h.head() != kind) fail(h.tokens[0], "expected '" + std::string(kind) + "'");
  if (h.tokens.size() != 2) fail(h.at(h.tokens.size() > 2 ? 2 : 0), "malformed header");
  return h;
}

inline void expect_count(const Line& l, std::size_t n) {
  if (l.tokens.size() > n) fail(l.tokens[n], "unexpected field '" + l.tokens[n].text + "'");
  l.at(n - 1);
}

}  // namespace io_detail

// ---- FBDD ----

inline Fbdd parse_fbdd(std::string_view text) {
  using namespace io_detail;
  auto lines = tokenize(text);
  const Line& h = header(lines, "fbdd");
  Fbdd m;
  m.dim = to_size(h.tokens[1], field(h.tokens[1], "dim"));
  std::map<long, std::size_t> index;
  struct Pending { const Token* lo; const Token* hi; };
  std::vector<Pending> pending;
  const Token* root = nullptr;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.head() == "node") {
      expect_count(l, 8);
      if (l.at(2).text != "var") fail(l.at(2), "expected 'var'");
      if (l.at(4).text != "lo") fail(l.at(4), "expected 'lo'");
      if (l.at(6).text != "hi") fail(l.at(6), "expected 'hi'");
      long id = to_id(l.at(1), l.at(1).text);
      if (!index.emplace(id, m.nodes.size()).second) fail(l.at(1), "duplicate node id " + l.at(1).text);
      m.nodes.push_back({id, to_size(l.at(3)), kFalse, kFalse});
      pending.push_back({&l.at(5), &l.at(7)});
    } else if (l.head() == "root") {
      expect_count(l, 2);
      if (root) fail(l.tokens[0], "second root line");
      root = &l.at(1);
    } else {
      fail(l.tokens[0], "unknown directive '" + l.head() + "'");
    }
  }
  auto resolve = [&](const Token& t) -> NodeRef {
    if (t.text == "T") return kTrue;
    if (t.text == "F") return kFalse;
    auto it = index.find(to_id(t, t.text));
    if (it == index.end()) fail(t, "unknown node " + t.text);
    return static_cast<NodeRef>(it->second);
  };
  for (std::size_t i = 0; i < pending.size(); ++i) {
    m.nodes[i].lo = resolve(*pending[i].lo);
    m.nodes[i].hi = resolve(*pending[i].hi);
  }
  if (!root) throw ParseError(lines.back().number + 1, 1, "missing root line");
  m.root = resolve(*root);
  require_valid(m);
  return m;
}

inline std::string serialize(const Fbdd& m) {
  std::ostringstream out;
  out << "fbdd dim=" << m.dim << "\n";
  for (const auto& v : m.nodes) {
    out << "node " << v.id << " var " << v.var << " lo " << detail::fbdd_ref_name(m, v.lo) << " hi "
        << detail::fbdd_ref_name(m, v.hi) << "\n";
  }
  out << "root " << detail::fbdd_ref_name(m, m.root) << "\n";
  return out.str();
}

// ---- Perceptron ----

inline Perceptron parse_perceptron(std::string_view text) {
  using namespace io_detail;
  auto lines = tokenize(text);
  const Line& h = header(lines, "perceptron");
  const std::size_t dim = to_size(h.tokens[1], field(h.tokens[1], "dim"));
  Perceptron m;
  bool have_w = false, have_b = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.head() == "w" && !have_w) {
      if (l.tokens.size() != dim + 1) {
        fail(l.tokens.size() > dim + 1 ? l.tokens[dim + 1] : l.tokens.back(),
             "expected " + std::to_string(dim) + " weights");
      }
      for (std::size_t j = 1; j <= dim; ++j) m.w.push_back(to_rational(l.tokens[j]));
      have_w = true;
    } else if (l.head() == "b" && !have_b) {
      expect_count(l, 2);
      m.b = to_rational(l.at(1));
      have_b = true;
    } else {
      fail(l.tokens[0], "unexpected line '" + l.head() + "'");
    }
  }
  if (!have_w && dim == 0) have_w = true;
  if (!have_w || !have_b) throw ParseError(lines.back().number + 1, 1, have_w ? "missing 'b' line" : "missing 'w' line");
  return m;
}

inline std::string serialize(const Perceptron& m) {
  std::ostringstream out;
  out << "perceptron dim=" << m.dim() << "\nw";
  for (const auto& w : m.w) out << ' ' << to_string(w);
  out << "\nb " << to_string(m.b) << "\n";
  return out.str();
}

// ---- MLP ----

inline Mlp parse_mlp(std::string_view text) {
  using namespace io_detail;
  auto lines = tokenize(text);
  const Line& h = header(lines, "mlp");
  std::string_view dims_text = field(h.tokens[1], "dims");
  std::vector<std::size_t> dims;
  for (std::size_t start = 0;;) {
    std::size_t comma = dims_text.find(',', start);
    dims.push_back(to_size(h.tokens[1], dims_text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (dims.size() < 2) fail(h.tokens[1], "need at least an input and an output width");
  Mlp m;
  m.input = dims[0];
  std::size_t li = 1;
  auto next = [&](const char* what) -> const Line& {
    if (li >= lines.size()) throw ParseError(lines.back().number + 1, 1, std::string("missing '") + what + "' line");
    const Line& l = lines[li++];
    if (l.head() != what) fail(l.tokens[0], std::string("expected '") + what + "'");
    return l;
  };
  auto row = [&](const Line& l, std::size_t width, std::vector<Rational>& dst, std::size_t offset) {
    if (l.tokens.size() != width + 1) {
      fail(l.tokens.size() > width + 1 ? l.tokens[width + 1] : l.tokens.back(),
           "expected " + std::to_string(width) + " values");
    }
    for (std::size_t j = 0; j < width; ++j) dst[offset + j] = to_rational(l.tokens[j + 1]);
  };
  for (std::size_t k = 1; k < dims.size(); ++k) {
    DenseLayer layer(dims[k - 1], dims[k], Activation::relu);
    for (std::size_t r = 0; r < layer.in; ++r) row(next("W"), layer.out, layer.w, r * layer.out);
    row(next("b"), layer.out, layer.b, 0);
    const Line& a = next("act");
    expect_count(a, 2);
    if (a.at(1).text == "relu") layer.act = Activation::relu;
    else if (a.at(1).text == "step") layer.act = Activation::step;
    else fail(a.at(1), "unknown activation '" + a.at(1).text + "'");
    m.layers.push_back(std::move(layer));
  }
  if (li < lines.size()) fail(lines[li].tokens[0], "unexpected line after the last layer");
  require_valid(m);
  return m;
}

inline std::string serialize(const Mlp& m) {
  std::ostringstream out;
  out << "mlp dims=" << m.input;
  for (const auto& l : m.layers) out << ',' << l.out;
  out << "\n";
  for (const auto& l : m.layers) {
    for (std::size_t r = 0; r < l.in; ++r) {
      out << 'W';
      for (std::size_t c = 0; c < l.out; ++c) out << ' ' << to_string(l.at(r, c));
      out << "\n";
    }
    out << 'b';
    for (const auto& b : l.b) out << ' ' << to_string(b);
    out << "\nact " << to_string(l.act) << "\n";
  }
  return out.str();
}

// ---- Circuits ----

namespace io_detail {

template <class Circuit>
Circuit parse_gates(std::string_view text, std::string_view kind) {
  auto lines = tokenize(text);
  const Line& h = header(lines, kind);
  Circuit c;
  c.var_count = to_size(h.tokens[1], field(h.tokens[1], "vars"));
  std::map<long, std::size_t> index;
  struct Ref { const Token* tok; std::string text; unsigned mult; };
  std::vector<std::vector<Ref>> refs;
  const Token* output = nullptr;

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.head() == "output") {
      expect_count(l, 2);
      if (output) fail(l.tokens[0], "second output line");
      output = &l.at(1);
      continue;
    }
    if (l.head() != "gate") fail(l.tokens[0], "unknown directive '" + l.head() + "'");
    long id = to_id(l.at(1), l.at(1).text);
    if (!index.emplace(id, c.gates.size()).second) fail(l.at(1), "duplicate gate id " + l.at(1).text);
    const Token& op = l.at(2);
    std::vector<Ref> rs;
    if (op.text == "input") {
      expect_count(l, 4);
      std::size_t v = to_size(l.at(3));
      if (v < 1 || v > c.var_count) fail(l.at(3), "variable out of range");
      c.gates.emplace_back();
      if constexpr (std::is_same_v<Circuit, BoolCircuit>) c.gates.back().kind = GateKind::input;
      else c.gates.back().is_input = true;
      c.gates.back().var = v - 1;
    } else if constexpr (std::is_same_v<Circuit, BoolCircuit>) {
      GateKind k;
      if (op.text == "not") k = GateKind::not_;
      else if (op.text == "and") k = GateKind::and_;
      else if (op.text == "or") k = GateKind::or_;
      else fail(op, "unknown gate '" + op.text + "'");
      for (std::size_t j = 3; j < l.tokens.size(); ++j) rs.push_back({&l.tokens[j], l.tokens[j].text, 1});
      if (k == GateKind::not_ && rs.size() != 1) fail(op, "not takes exactly one input");
      c.gates.push_back({k, 0, {}});
    } else {
      if (op.text != "maj") fail(op, "unknown gate '" + op.text + "'");
      for (std::size_t j = 3; j < l.tokens.size(); ++j) {
        std::string_view s = l.tokens[j].text;
        for (std::size_t start = 0; start <= s.size();) {
          std::size_t comma = s.find(',', start);
          if (comma == std::string_view::npos) comma = s.size();
          std::string_view item = s.substr(start, comma - start);
          start = comma + 1;
          if (item.empty()) continue;
          unsigned mult = 1;
          if (auto colon = item.find(':'); colon != std::string_view::npos) {
            std::size_t mv = to_size(l.tokens[j], item.substr(colon + 1));
            if (mv == 0) fail(l.tokens[j], "multiplicity must be positive");
            mult = static_cast<unsigned>(mv);
            item = item.substr(0, colon);
          }
          rs.push_back({&l.tokens[j], std::string(item), mult});
        }
      }
      c.gates.push_back({false, 0, {}});
    }
    refs.push_back(std::move(rs));
  }
  auto resolve = [&](const Token& t, std::string_view s) {
    auto it = index.find(to_id(t, s));
    if (it == index.end()) fail(t, "unknown gate " + std::string(s));
    return it->second;
  };
  for (std::size_t g = 0; g < refs.size(); ++g) {
    for (const auto& r : refs[g]) {
      std::size_t child = resolve(*r.tok, r.text);
      if constexpr (std::is_same_v<Circuit, BoolCircuit>) c.gates[g].children.push_back(child);
      else c.gates[g].children.push_back({child, r.mult});
    }
  }
  if (!output) throw ParseError(lines.back().number + 1, 1, "missing output line");
  c.output = resolve(*output, output->text);
  require_valid_circuit(c);
  return c;
}

}  // namespace io_detail

inline BoolCircuit parse_circuit(std::string_view text) {
  return io_detail::parse_gates<BoolCircuit>(text, "circuit");
}

inline MajCircuit parse_majcircuit(std::string_view text) {
  return io_detail::parse_gates<MajCircuit>(text, "majcircuit");
}

inline std::string serialize(const BoolCircuit& c) {
  std::ostringstream out;
  out << "circuit vars=" << c.var_count << "\n";
  for (std::size_t g = 0; g < c.gates.size(); ++g) {
    const auto& gate = c.gates[g];
    out << "gate " << g + 1 << ' ';
    switch (gate.kind) {
      case GateKind::input: out << "input " << gate.var + 1; break;
      case GateKind::not_: out << "not"; break;
      case GateKind::and_: out << "and"; break;
      case GateKind::or_: out << "or"; break;
    }
    for (std::size_t ch : gate.children) out << ' ' << ch + 1;
    out << "\n";
  }
  out << "output " << c.output + 1 << "\n";
  return out.str();
}

inline std::string serialize(const MajCircuit& c) {
  std::ostringstream out;
  out << "majcircuit vars=" << c.var_count << "\n";
  for (std::size_t g = 0; g < c.gates.size(); ++g) {
    const auto& gate = c.gates[g];
    out << "gate " << g + 1 << ' ';
    if (gate.is_input) {
      out << "input " << gate.var + 1 << "\n";
      continue;
    }
    out << "maj";
    for (std::size_t j = 0; j < gate.children.size(); ++j) {
      out << (j == 0 ? " " : ",") << gate.children[j].child + 1 << ':' << gate.children[j].mult;
    }
    out << "\n";
  }
  out << "output " << c.output + 1 << "\n";
  return out.str();
}

// ---- Graphs and formulas ----

inline Graph parse_graph(std::string_view text) {
  using namespace io_detail;
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, 1, "empty input, expected 'directed' or 'undirected'");
  const Line& h = lines[0];
  Graph g;
  if (h.head() == "directed") g.directed = true;
  else if (h.head() != "undirected") fail(h.tokens[0], "expected 'directed' or 'undirected'");
  expect_count(h, 2);
  g.vertices = to_size(h.tokens[1], field(h.tokens[1], "vertices"));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.head() != "edge") fail(l.tokens[0], "expected 'edge'");
    expect_count(l, 3);
    std::size_t u = to_size(l.at(1)), v = to_size(l.at(2));
    if (u < 1 || u > g.vertices) fail(l.at(1), "vertex out of range");
    if (v < 1 || v > g.vertices) fail(l.at(2), "vertex out of range");
    g.edges.push_back({u - 1, v - 1});
  }
  return g;
}

inline std::string serialize(const Graph& g) {
  std::ostringstream out;
  out << (g.directed ? "directed" : "undirected") << " vertices=" << g.vertices << "\n";
  for (const auto& [u, v] : g.edges) out << "edge " << u + 1 << ' ' << v + 1 << "\n";
  return out.str();
}

inline Dnf parse_dnf(std::string_view text) {
  using namespace io_detail;
  auto lines = tokenize(text);
  const Line& h = header(lines, "dnf");
  Dnf f;
  f.vars = to_size(h.tokens[1], field(h.tokens[1], "vars"));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.head() != "term") fail(l.tokens[0], "expected 'term'");
    std::vector<int> t;
    for (std::size_t j = 1; j < l.tokens.size(); ++j) {
      long lit = to_id(l.tokens[j], l.tokens[j].text);
      if (lit == 0 || static_cast<std::size_t>(lit < 0 ? -lit : lit) > f.vars) fail(l.tokens[j], "literal out of range");
      t.push_back(static_cast<int>(lit));
    }
    f.terms.push_back(std::move(t));
  }
  return f;
}

inline std::string serialize(const Dnf& f) {
  std::ostringstream out;
  out << "dnf vars=" << f.vars << "\n";
  for (const auto& t : f.terms) {
    out << "term";
    for (int lit : t) out << ' ' << lit;
    out << "\n";
  }
  return out.str();
}

// ---- Model dispatch ----

using AnyModel = std::variant<Fbdd, Perceptron, Mlp>;

// Picks the parser from the first keyword of the text.
inline AnyModel parse_model(std::string_view text) {
  auto lines = io_detail::tokenize(text);
  if (lines.empty()) throw ParseError(1, 1, "empty model file");
  const std::string& kind = lines[0].head();
  if (kind == "fbdd") return parse_fbdd(text);
  if (kind == "perceptron") return parse_perceptron(text);
  if (kind == "mlp") return parse_mlp(text);
  io_detail::fail(lines[0].tokens[0], "unknown model kind '" + kind + "'");
}

}  // namespace xq
