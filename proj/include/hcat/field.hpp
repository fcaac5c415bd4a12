#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "hcat/error.hpp"

namespace hcat {

/// The rational numbers with arbitrary-precision numerators and denominators.
/// Values are kept canonical (lowest terms, positive denominator).
struct Rationals {
  using value_type = mpq_class;

  std::uint64_t characteristic() const { return 0; }
  std::string name() const { return "Q"; }
  bool operator==(const Rationals&) const { return true; }

  value_type zero() const { return value_type(0); }
  value_type one() const { return value_type(1); }
  value_type from_int(long long v) const {
    value_type r;
    mpz_set_si(r.get_num_mpz_t(), static_cast<long>(v));
    return r;
  }

  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool is_one(const value_type& a) const { return a == 1; }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const {
    if (is_zero(a)) throw Error("division by zero");
    return 1 / a;
  }
  value_type div(const value_type& a, const value_type& b) const { return mul(a, inv(b)); }

  // acc += a*b and acc -= a*b without materialising a temporary per call.
  void add_mul(value_type& acc, const value_type& a, const value_type& b) const {
    thread_local mpq_class tmp;
    mpq_mul(tmp.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
    mpq_add(acc.get_mpq_t(), acc.get_mpq_t(), tmp.get_mpq_t());
  }
  void sub_mul(value_type& acc, const value_type& a, const value_type& b) const {
    thread_local mpq_class tmp;
    mpq_mul(tmp.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
    mpq_sub(acc.get_mpq_t(), acc.get_mpq_t(), tmp.get_mpq_t());
  }

  std::string to_string(const value_type& a) const { return a.get_str(); }

  /// Accepts "5", "-3/7", "6/4" (reduced on read). Rejects zero denominators.
  value_type parse(std::string_view text) const {
    std::string s(text);
    if (s.empty()) throw ParseError("empty scalar literal", 0);
    if (s.front() == '+') s.erase(0, 1);
    auto slash = s.find('/');
    auto digits_ok = [](std::string_view t) {
      if (!t.empty() && t.front() == '-') t.remove_prefix(1);
      if (t.empty()) return false;
      for (char c : t)
        if (c < '0' || c > '9') return false;
      return true;
    };
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!digits_ok(num) || !digits_ok(den) || den.front() == '-')
      throw ParseError("malformed rational literal '" + std::string(text) + "'", 0);
    mpz_class n(num), d(den);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'", 0);
    value_type r(n, d);
    r.canonicalize();
    return r;
  }
};

/// The prime field F_p for a prime p < 2^31. The modulus is part of the value
/// of the descriptor, so matrices over F_3 and F_5 compare unequal.
struct PrimeField {
  using value_type = std::uint32_t;

  std::uint32_t p = 2;

  PrimeField() = default;
  explicit PrimeField(std::uint64_t prime) : p(static_cast<std::uint32_t>(prime)) {
    if (prime < 2 || prime >= (std::uint64_t{1} << 31)) throw Error("prime must lie in [2, 2^31)");
    for (std::uint64_t d = 2; d * d <= prime; ++d)
      if (prime % d == 0) throw Error(std::to_string(prime) + " is not prime");
  }

  std::uint64_t characteristic() const { return p; }
  std::string name() const { return "F_" + std::to_string(p); }
  bool operator==(const PrimeField& o) const { return p == o.p; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long long v) const {
    long long r = v % static_cast<long long>(p);
    if (r < 0) r += p;
    return static_cast<value_type>(r);
  }

  bool is_zero(value_type a) const { return a == 0; }
  bool is_one(value_type a) const { return a == 1; }
  bool equal(value_type a, value_type b) const { return a == b; }

  value_type add(value_type a, value_type b) const {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<value_type>(s >= p ? s - p : s);
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + (p - b); }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>((std::uint64_t{a} * b) % p);
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
  value_type inv(value_type a) const {
    if (a == 0) throw Error("division by zero");
    // Fermat: a^(p-2)
    std::uint64_t result = 1, base = a, e = p - 2;
    while (e) {
      if (e & 1) result = result * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return static_cast<value_type>(result);
  }
  value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }

  void add_mul(value_type& acc, value_type a, value_type b) const { acc = add(acc, mul(a, b)); }
  void sub_mul(value_type& acc, value_type a, value_type b) const { acc = sub(acc, mul(a, b)); }

  std::string to_string(value_type a) const { return std::to_string(a); }

  /// Integer literals, reduced mod p. "a/b" is accepted and read as a * b^-1.
  value_type parse(std::string_view text) const {
    std::string s(text);
    auto slash = s.find('/');
    auto read_int = [&](const std::string& t) -> value_type {
      std::string u = t;
      if (!u.empty() && u.front() == '+') u.erase(0, 1);
      bool neg = !u.empty() && u.front() == '-';
      if (neg) u.erase(0, 1);
      if (u.empty()) throw ParseError("malformed integer literal '" + std::string(text) + "'", 0);
      std::uint64_t r = 0;
      for (char c : u) {
        if (c < '0' || c > '9') throw ParseError("malformed integer literal '" + std::string(text) + "'", 0);
        r = (r * 10 + static_cast<std::uint64_t>(c - '0')) % p;
      }
      auto v = static_cast<value_type>(r);
      return neg ? this->neg(v) : v;
    };
    if (slash == std::string::npos) return read_int(s);
    value_type den = read_int(s.substr(slash + 1));
    if (den == 0) throw ParseError("denominator vanishes mod p in '" + std::string(text) + "'", 0);
    return div(read_int(s.substr(0, slash)), den);
  }
};

/// Requirements every field descriptor satisfies.
template <class F>
concept FieldDescriptor = requires(const F f, typename F::value_type a, typename F::value_type& acc) {
  { f.zero() } -> std::same_as<typename F::value_type>;
  { f.one() } -> std::same_as<typename F::value_type>;
  { f.is_zero(a) } -> std::same_as<bool>;
  { f.add(a, a) } -> std::same_as<typename F::value_type>;
  { f.mul(a, a) } -> std::same_as<typename F::value_type>;
  { f.inv(a) } -> std::same_as<typename F::value_type>;
  { f.characteristic() } -> std::same_as<std::uint64_t>;
  f.sub_mul(acc, a, a);
};

}  // namespace hcat
