#pragma once

// Exact arithmetic used on every decision path. Rational is GMP's mpq_class,
// which keeps values canonical (gcd(|num|, den) = 1, den >= 1) after each
// arithmetic operation.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace xq {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline Integer floor_div2(const Integer& n) {
  Integer q;
  mpz_fdiv_q_2exp(q.get_mpz_t(), n.get_mpz_t(), 1);
  return q;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// lcm(a, b) = a*b / gcd(a, b), for positive a, b.
inline Integer lcm(const Integer& a, const Integer& b) {
  Integer g = gcd(a, b);
  Integer r = a / g;
  r *= b;
  return r;
}

inline Integer pow(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

inline Integer pow2(std::size_t exp) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, exp);
  return r;
}

inline Integer binomial(std::size_t n, std::size_t k) {
  Integer r;
  if (k > n) return r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// Number of decimal digits of |n| (0 has one digit).
inline std::size_t decimal_digits(const Integer& n) {
  Integer a = abs(n);
  return a == 0 ? 1 : a.get_str().size();
}

inline std::string to_string(const Integer& n) { return n.get_str(); }

// "p" when the denominator is 1, otherwise "p/q".
inline std::string to_string(const Rational& r) { return r.get_str(); }

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace detail

inline std::optional<Integer> parse_integer(std::string_view text) {
  std::string_view digits = text;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (!detail::all_digits(digits)) return std::nullopt;
  Integer n(std::string(digits), 10);
  if (text.front() == '-') n = -n;
  return n;
}

// Accepts "p", "p/q" (q > 0) and the decimal form "d.ddd".
inline std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = parse_integer(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!num || !detail::all_digits(den_text)) return std::nullopt;
    Integer den(std::string(den_text), 10);
    if (den == 0) return std::nullopt;
    Rational r(*num, den);
    r.canonicalize();
    return r;
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    bool negative = !int_part.empty() && int_part.front() == '-';
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
      int_part.remove_prefix(1);
    }
    if (!detail::all_digits(int_part) || !detail::all_digits(frac_part)) return std::nullopt;
    Integer num(std::string(int_part) + std::string(frac_part), 10);
    if (negative) num = -num;
    Rational r(num, pow(Integer(10), static_cast<unsigned long>(frac_part.size())));
    r.canonicalize();
    return r;
  }
  auto n = parse_integer(text);
  if (!n) return std::nullopt;
  return Rational(*n);
}

}  // namespace xq
