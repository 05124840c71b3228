#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "xq/errors.hpp"

namespace xq {

class Instance {
 public:
  Instance() = default;
  explicit Instance(std::size_t dim) : bits_(dim, 0) {}
  Instance(std::initializer_list<int> bits) {
    for (int b : bits) bits_.push_back(b ? 1 : 0);
  }
  explicit Instance(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto& b : bits_) b = b ? 1 : 0;
  }

  static Instance zeros(std::size_t dim) { return Instance(dim); }
  static Instance ones(std::size_t dim) { return Instance(std::vector<std::uint8_t>(dim, 1)); }

  // Bit i (0-based) is taken from bit i of `mask`.
  static Instance from_mask(std::size_t dim, std::uint64_t mask) {
    Instance x(dim);
    for (std::size_t i = 0; i < dim; ++i) x.bits_[i] = (mask >> i) & 1u;
    return x;
  }

  std::size_t dim() const { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool v) { bits_[i] = v ? 1 : 0; }
  void flip(std::size_t i) { bits_[i] ^= 1u; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  std::size_t weight() const {
    std::size_t w = 0;
    for (auto b : bits_) w += b;
    return w;
  }

  std::string str() const {
    std::string s;
    for (auto b : bits_) s += b ? '1' : '0';
    return s;
  }

  friend bool operator==(const Instance&, const Instance&) = default;
  friend auto operator<=>(const Instance&, const Instance&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

inline std::size_t hamming(const Instance& a, const Instance& b) {
  check_dim(a.dim(), b.dim());
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) d += a[i] != b[i];
  return d;
}

enum class Cell : std::uint8_t { zero = 0, one = 1, free = 2 };

class PartialInstance {
 public:
  PartialInstance() = default;
  explicit PartialInstance(std::size_t dim) : cells_(dim, Cell::free) {}
  explicit PartialInstance(std::vector<Cell> cells) : cells_(std::move(cells)) {}
  explicit PartialInstance(const Instance& x) {
    cells_.reserve(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) cells_.push_back(x[i] ? Cell::one : Cell::zero);
  }

  // Keeps x's value on positions where `keep` is set.
  static PartialInstance restrict(const Instance& x, const std::vector<bool>& keep) {
    check_dim(x.dim(), keep.size());
    PartialInstance y(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) {
      if (keep[i]) y.cells_[i] = x[i] ? Cell::one : Cell::zero;
    }
    return y;
  }

  std::size_t dim() const { return cells_.size(); }
  Cell operator[](std::size_t i) const { return cells_[i]; }
  void set(std::size_t i, Cell c) { cells_[i] = c; }
  bool is_free(std::size_t i) const { return cells_[i] == Cell::free; }
  const std::vector<Cell>& cells() const { return cells_; }

  std::size_t defined_count() const { return dim() - free_count(); }
  std::size_t free_count() const {
    std::size_t f = 0;
    for (auto c : cells_) f += c == Cell::free;
    return f;
  }

  std::vector<std::size_t> free_positions() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (cells_[i] == Cell::free) out.push_back(i);
    }
    return out;
  }

  std::string str() const {
    std::string s;
    for (auto c : cells_) s += c == Cell::free ? '*' : c == Cell::one ? '1' : '0';
    return s;
  }

  friend bool operator==(const PartialInstance&, const PartialInstance&) = default;

 private:
  std::vector<Cell> cells_;
};

inline bool is_completion(const Instance& x, const PartialInstance& y) {
  if (x.dim() != y.dim()) return false;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (y[i] != Cell::free && (y[i] == Cell::one) != x[i]) return false;
  }
  return true;
}

inline void require_completion(const Instance& x, const PartialInstance& y) {
  check_dim(y.dim(), x.dim());
  if (!is_completion(x, y)) throw NotACompletion();
}

// Visits every completion of y, in lexicographic order of the free cells with
// the leftmost free cell most significant. Stops early if `f` returns false.
template <class F>
void for_each_completion(const PartialInstance& y, F&& f) {
  std::vector<std::size_t> free = y.free_positions();
  Instance x(y.dim());
  for (std::size_t i = 0; i < y.dim(); ++i) x.set(i, y[i] == Cell::one);
  for (;;) {
    if constexpr (std::is_same_v<decltype(f(x)), bool>) {
      if (!f(static_cast<const Instance&>(x))) return;
    } else {
      f(static_cast<const Instance&>(x));
    }
    // Binary increment with the last free cell as the least significant bit.
    std::size_t j = free.size();
    while (j > 0 && x[free[j - 1]]) {
      x.set(free[j - 1], false);
      --j;
    }
    if (j == 0) return;
    x.set(free[j - 1], true);
  }
}

inline std::vector<Instance> enumerate_completions(const PartialInstance& y) {
  std::vector<Instance> out;
  for_each_completion(y, [&](const Instance& x) { out.push_back(x); });
  return out;
}

inline std::optional<Instance> parse_instance(std::string_view s) {
  std::vector<std::uint8_t> bits;
  for (char c : s) {
    if (c != '0' && c != '1') return std::nullopt;
    bits.push_back(c == '1');
  }
  return Instance(std::move(bits));
}

inline std::optional<PartialInstance> parse_partial(std::string_view s) {
  std::vector<Cell> cells;
  for (char c : s) {
    switch (c) {
      case '0': cells.push_back(Cell::zero); break;
      case '1': cells.push_back(Cell::one); break;
      case '*': cells.push_back(Cell::free); break;
      default: return std::nullopt;
    }
  }
  return PartialInstance(std::move(cells));
}

struct QueryVerdict {
  bool yes = false;
  std::variant<std::monostate, Instance, PartialInstance> witness;

  static QueryVerdict no() { return {}; }
  static QueryVerdict with(Instance x) { return {true, std::move(x)}; }
  static QueryVerdict with(PartialInstance y) { return {true, std::move(y)}; }

  const Instance* instance() const { return std::get_if<Instance>(&witness); }
  const PartialInstance* partial() const { return std::get_if<PartialInstance>(&witness); }

  // "YES witness=..." or "NO".
  std::string str() const {
    if (!yes) return "NO";
    if (auto x = instance()) return "YES witness=" + x->str();
    if (auto y = partial()) return "YES witness=" + y->str();
    return "YES";
  }
};

}  // namespace xq
