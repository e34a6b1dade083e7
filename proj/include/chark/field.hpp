#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "chark/rng.hpp"

namespace chark {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* Exact rational scalar, GMP-backed, always in canonical form. */
struct Rational {
  mpq_class v;

  Rational() : v(0) {}
  Rational(long n) : v(n) {}
  Rational(long n, long d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    v = mpq_class(n, d);
    v.canonicalize();
  }
  explicit Rational(mpq_class q) : v(std::move(q)) { v.canonicalize(); }

  // accepts "7", "-3/4", "+12"
  static Rational parse(const std::string& s) {
    try {
      mpq_class q(s);
      if (q.get_den() == 0) throw std::domain_error("zero denominator");
      q.canonicalize();
      return Rational(std::move(q));
    } catch (const std::invalid_argument&) {
      throw error("bad rational literal: \"" + s + "\"");
    }
  }

  bool is_zero() const { return v == 0; }
  std::string str() const { return v.get_str(); }

  Rational operator-() const { return Rational(mpq_class(-v)); }
  Rational& operator+=(const Rational& o) {
    v += o.v;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    v -= o.v;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    v *= o.v;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.v == 0) throw std::domain_error("division by zero");
    return Rational(mpq_class(a.v / b.v));
  }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v == b.v; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v != b.v; }
  friend bool operator<(const Rational& a, const Rational& b) { return cmp(a.v, b.v) < 0; }
};

inline constexpr uint64_t kDefaultPrime = 4611686018427387847ull;  // 2^62 - 57

/* Prime-field scalar with a runtime modulus. A value-initialized Fp has
 * modulus 0 and acts as a zero that combines with any modulus, so that
 * aggregate zero-initialization works. */
struct Fp {
  uint64_t v = 0;
  uint64_t p = 0;

  static uint64_t join(uint64_t a, uint64_t b) {
    if (a == b || b == 0) return a;
    if (a == 0) return b;
    throw std::logic_error("mixed prime moduli");
  }

  friend Fp operator+(const Fp& a, const Fp& b) {
    uint64_t m = join(a.p, b.p);
    if (m == 0) return {};
    uint64_t s = a.v + b.v;  // safe: m < 2^63
    return {s >= m ? s - m : s, m};
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    uint64_t m = join(a.p, b.p);
    if (m == 0) return {};
    return {a.v >= b.v ? a.v - b.v : a.v + m - b.v, m};
  }
  Fp operator-() const {
    if (p == 0) return {};
    return {v == 0 ? 0 : p - v, p};
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    uint64_t m = join(a.p, b.p);
    if (m == 0) return {};
    unsigned __int128 t = static_cast<unsigned __int128>(a.v) * b.v;
    return {static_cast<uint64_t>(t % m), m};
  }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }

  Fp pow(uint64_t e) const {
    Fp r{1 % p, p}, b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }
  Fp inv() const {
    if (v == 0) throw std::domain_error("division by zero");
    return pow(p - 2);  // p prime
  }
  friend Fp operator/(const Fp& a, const Fp& b) {
    uint64_t m = join(a.p, b.p);
    if (b.v == 0) throw std::domain_error("division by zero");
    Fp bb{b.v, m};
    return a * bb.inv();
  }

  bool is_zero() const { return v == 0; }
  friend bool operator==(const Fp& a, const Fp& b) {
    join(a.p, b.p);
    return a.v == b.v;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }
};

// deterministic Miller-Rabin, valid for all 64-bit inputs
inline bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  auto mulm = [n](uint64_t a, uint64_t b) {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % n);
  };
  auto powm = [&](uint64_t a, uint64_t e) {
    uint64_t r = 1;
    while (e) {
      if (e & 1) r = mulm(r, a);
      a = mulm(a, a);
      e >>= 1;
    }
    return r;
  };
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = powm(a % n, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulm(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/* Runtime field context: neutral elements, sampling, and the embedding of
 * the rational coefficient ring. Evaluation code is templated over this. */
template <class F>
struct FieldCtx;

template <>
struct FieldCtx<Rational> {
  int64_t bound = 1 << 20;  // integer sampling window [-bound, bound]

  Rational zero() const { return Rational(); }
  Rational one() const { return Rational(1); }
  Rational from_int(long k) const { return Rational(k); }
  Rational from_rational(const Rational& r) const { return r; }
  Rational sample(Rng& g) const { return Rational(g.range(-bound, bound)); }
  Rational sample_nonzero(Rng& g) const {
    int64_t x = g.range(-bound, bound - 1);
    if (x >= 0) ++x;
    return Rational(x);
  }
  long double sample_space() const { return 2.0L * static_cast<long double>(bound) + 1; }
  std::string name() const { return "Q"; }
  std::string str(const Rational& x) const { return x.str(); }
};

template <>
struct FieldCtx<Fp> {
  uint64_t p = kDefaultPrime;

  void check() const {
    if (!is_prime_u64(p)) throw error("field modulus " + std::to_string(p) + " is not prime");
    if (p <= (1ull << 31)) throw error("field too small for sampling (need p > 2^31)");
    if (p >= (1ull << 63)) throw error("field modulus must be < 2^63");
  }
  Fp zero() const { return {0, p}; }
  Fp one() const { return {1, p}; }
  Fp from_int(long long k) const {
    long long r = k % static_cast<long long>(p);  // p < 2^63
    if (r < 0) r += static_cast<long long>(p);
    return {static_cast<uint64_t>(r), p};
  }
  Fp from_rational(const Rational& r) const {
    uint64_t num = mpz_fdiv_ui(r.v.get_num().get_mpz_t(), p);
    uint64_t den = mpz_fdiv_ui(r.v.get_den().get_mpz_t(), p);
    if (den == 0) throw std::domain_error("denominator divisible by field modulus");
    return Fp{num, p} * Fp{den, p}.inv();
  }
  Fp sample(Rng& g) const { return {g.below(p), p}; }
  Fp sample_nonzero(Rng& g) const { return {1 + g.below(p - 1), p}; }
  long double sample_space() const { return static_cast<long double>(p); }
  std::string name() const { return "F_" + std::to_string(p); }
  std::string str(const Fp& x) const { return std::to_string(x.v); }
};

}  // namespace chark
