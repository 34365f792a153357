#pragma once

/**
 * @file field.hpp
 * @brief Exact base-field scalars: prime-field residues, GMP rationals, and
 *        the quadratic extension K(sqrt(c)) used for residue fields of
 *        degree-2 places.
 *
 * Scalars are self-describing: an Fp carries its modulus, a Quad carries its
 * non-residue. Generic code can therefore combine values without a separate
 * context object; constants are produced with `x.make(n)`.
 */

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ffspace/errors.hpp"

namespace ffspace {

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace detail

/// Residue modulo an odd prime. A default-constructed value is an unbound
/// zero (modulus 0) that adopts the modulus of whatever it is combined with.
class Fp {
 public:
  Fp() = default;
  Fp(std::int64_t n, std::uint64_t p) : p_(p) {
    if (p == 0) throw std::logic_error("Fp: modulus must be set");
    std::int64_t r = n % static_cast<std::int64_t>(p);
    if (r < 0) r += static_cast<std::int64_t>(p);
    v_ = static_cast<std::uint64_t>(r);
  }

  static Fp raw(std::uint64_t v, std::uint64_t p) {
    Fp x;
    x.v_ = v;
    x.p_ = p;
    return x;
  }

  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return p_ != 0 && v_ == 1; }
  bool bound() const { return p_ != 0; }

  /// Integer n in the same field as *this.
  Fp make(std::int64_t n) const {
    if (p_ == 0) throw std::logic_error("Fp::make on unbound zero");
    return Fp(n, p_);
  }

  friend Fp operator+(const Fp& a, const Fp& b) {
    const auto p = join(a, b);
    if (p == 0) return Fp{};
    std::uint64_t s = a.v_ + b.v_;
    if (s >= p) s -= p;
    return raw(s, p);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    const auto p = join(a, b);
    if (p == 0) return Fp{};
    return raw(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + p - b.v_, p);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    const auto p = join(a, b);
    if (p == 0) return Fp{};
    return raw(detail::mulmod(a.v_, b.v_, p), p);
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }
  Fp operator-() const { return v_ == 0 ? *this : raw(p_ - v_, p_); }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }
  friend bool operator==(const Fp& a, const Fp& b) { return a.v_ == b.v_; }

  Fp inverse() const {
    if (v_ == 0) throw std::domain_error("Fp: inverse of zero");
    return raw(detail::powmod(v_, p_ - 2, p_), p_);
  }

  bool is_square() const { return v_ == 0 || detail::powmod(v_, (p_ - 1) / 2, p_) == 1; }

  /// Tonelli-Shanks; returns the root with the smaller representative.
  std::optional<Fp> sqrt() const {
    if (v_ == 0) return *this;
    if (!is_square()) return std::nullopt;
    const std::uint64_t p = p_;
    std::uint64_t q = p - 1, s = 0;
    while ((q & 1) == 0) {
      q >>= 1;
      ++s;
    }
    std::uint64_t z = 2;
    while (detail::powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    std::uint64_t m = s, c = detail::powmod(z, q, p), t = detail::powmod(v_, q, p),
                  r = detail::powmod(v_, (q + 1) / 2, p);
    while (t != 1) {
      std::uint64_t i = 0, tt = t;
      while (tt != 1) {
        tt = detail::mulmod(tt, tt, p);
        ++i;
      }
      std::uint64_t b = c;
      for (std::uint64_t k = 0; k + i + 1 < m; ++k) b = detail::mulmod(b, b, p);
      m = i;
      c = detail::mulmod(b, b, p);
      t = detail::mulmod(t, c, p);
      r = detail::mulmod(r, b, p);
    }
    if (p - r < r) r = p - r;
    return raw(r, p);
  }

  /// Canonical order (by representative); used for deterministic choices.
  friend bool canonical_less(const Fp& a, const Fp& b) { return a.v_ < b.v_; }

  std::string to_string() const { return std::to_string(v_); }

 private:
  static std::uint64_t join(const Fp& a, const Fp& b) {
    if (a.p_ == 0) return b.p_;
    if (b.p_ != 0 && b.p_ != a.p_) throw std::logic_error("Fp: mixed moduli");
    return a.p_;
  }

  std::uint64_t v_ = 0;
  std::uint64_t p_ = 0;
};

/// Arbitrary-precision rational in lowest terms (positive denominator).
class Rational {
 public:
  Rational() = default;
  Rational(long n) : q_(n) {}
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  Rational(const mpz_class& num, const mpz_class& den) : q_(num, den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    q_.canonicalize();
  }

  const mpq_class& get() const { return q_; }
  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool bound() const { return true; }
  int sign() const { return sgn(q_); }
  Rational make(std::int64_t n) const { return Rational(static_cast<long>(n)); }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ + b.q_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ - b.q_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ * b.q_)); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(mpq_class(a.q_ / b.q_));
  }
  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }

  Rational inverse() const {
    if (is_zero()) throw std::domain_error("Rational: inverse of zero");
    return Rational(mpq_class(1 / q_));
  }

  bool is_square() const { return sqrt().has_value(); }

  /// Non-negative rational square root when one exists.
  std::optional<Rational> sqrt() const {
    if (sign() < 0) return std::nullopt;
    const mpz_class n = num(), d = den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return Rational(rn, rd);
  }

  friend bool canonical_less(const Rational& a, const Rational& b) { return a.q_ < b.q_; }

  std::string to_string() const { return q_.get_str(); }

 private:
  mpq_class q_{0};
};

/// Field descriptor for F_p.
struct PrimeField {
  using Elem = Fp;

  explicit PrimeField(std::uint64_t prime = 10007) : p(prime) {
    if (p == 2) throw InputError("characteristic 2 is not supported");
    if (p >= (1ULL << 31) || !detail::is_prime_u64(p))
      throw InputError("Fp modulus must be an odd prime below 2^31, got " + std::to_string(p));
  }

  Elem zero() const { return Fp(0, p); }
  Elem one() const { return Fp(1, p); }
  Elem from_int(std::int64_t n) const { return Fp(n, p); }

  /// Decimal integer literal of any length, reduced mod p.
  Elem from_decimal(std::string_view digits) const {
    std::uint64_t r = 0;
    for (char ch : digits) {
      if (ch < '0' || ch > '9') throw InputError("bad integer literal '" + std::string(digits) + "'");
      r = (r * 10 + static_cast<std::uint64_t>(ch - '0')) % p;
    }
    return Fp::raw(r, p);
  }

  Elem random(std::mt19937_64& rng) const {
    return Fp::raw(std::uniform_int_distribution<std::uint64_t>(0, p - 1)(rng), p);
  }
  Elem random_nonzero(std::mt19937_64& rng) const {
    return Fp::raw(std::uniform_int_distribution<std::uint64_t>(1, p - 1)(rng), p);
  }

  bool is_finite() const { return true; }
  std::uint64_t characteristic() const { return p; }
  std::string name() const { return "Fp:" + std::to_string(p); }
  friend bool operator==(const PrimeField&, const PrimeField&) = default;

  std::uint64_t p;
};

/// Field descriptor for Q.
struct RationalField {
  using Elem = Rational;

  Elem zero() const { return Rational(0L); }
  Elem one() const { return Rational(1L); }
  Elem from_int(std::int64_t n) const { return Rational(static_cast<long>(n)); }
  Elem from_decimal(std::string_view digits) const {
    for (char ch : digits)
      if (ch < '0' || ch > '9') throw InputError("bad integer literal '" + std::string(digits) + "'");
    return Rational(mpq_class(mpz_class(std::string(digits))));
  }

  /// Small-height rationals: numerator in [-9, 9], denominator in [1, 4].
  Elem random(std::mt19937_64& rng) const {
    const long n = std::uniform_int_distribution<long>(-9, 9)(rng);
    const long d = std::uniform_int_distribution<long>(1, 4)(rng);
    return Rational(mpz_class(n), mpz_class(d));
  }
  Elem random_nonzero(std::mt19937_64& rng) const {
    for (;;) {
      auto r = random(rng);
      if (!r.is_zero()) return r;
    }
  }

  bool is_finite() const { return false; }
  std::uint64_t characteristic() const { return 0; }
  std::string name() const { return "Q"; }
  friend bool operator==(const RationalField&, const RationalField&) = default;
};

/// Element a + b*sqrt(c) of K(sqrt(c)). A zero c marks a plain base-field
/// value (b must then be zero); binary operations adopt the non-zero c.
template <class E>
class Quad {
 public:
  Quad() = default;
  Quad(E a) : a_(std::move(a)) {}
  Quad(E a, E b, E c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    if (c_.is_zero() && !b_.is_zero()) throw std::logic_error("Quad: irrational part without extension");
  }

  const E& re() const { return a_; }
  const E& im() const { return b_; }
  const E& nonresidue() const { return c_; }
  bool in_base() const { return b_.is_zero(); }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_one() const { return a_.is_one() && b_.is_zero(); }
  bool bound() const { return a_.bound() || b_.bound() || c_.bound(); }
  Quad make(std::int64_t n) const {
    const E& ref = a_.bound() ? a_ : (b_.bound() ? b_ : c_);
    return Quad(ref.make(n), E{}, c_);
  }

  /// The generator sqrt(c) of the extension.
  static Quad root_of(const E& c) { return Quad(c * E{}, c.make(1), c); }

  friend Quad operator+(const Quad& x, const Quad& y) { return Quad(x.a_ + y.a_, x.b_ + y.b_, pick(x, y)); }
  friend Quad operator-(const Quad& x, const Quad& y) { return Quad(x.a_ - y.a_, x.b_ - y.b_, pick(x, y)); }
  friend Quad operator*(const Quad& x, const Quad& y) {
    const E& c = pick(x, y);
    if (x.b_.is_zero() && y.b_.is_zero()) return Quad(x.a_ * y.a_, E{}, c);
    return Quad(x.a_ * y.a_ + c * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, c);
  }
  friend Quad operator/(const Quad& x, const Quad& y) { return x * y.inverse(); }
  Quad operator-() const { return Quad(-a_, -b_, c_); }
  Quad& operator+=(const Quad& o) { return *this = *this + o; }
  Quad& operator-=(const Quad& o) { return *this = *this - o; }
  Quad& operator*=(const Quad& o) { return *this = *this * o; }
  friend bool operator==(const Quad& x, const Quad& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

  E norm() const { return a_ * a_ - c_ * b_ * b_; }

  Quad inverse() const {
    if (b_.is_zero()) return Quad(a_.inverse(), E{}, c_);
    const E n = norm();
    if (n.is_zero()) throw std::domain_error("Quad: inverse of zero divisor");
    const E ni = n.inverse();
    return Quad(a_ * ni, -b_ * ni, c_);
  }

  /// Square root inside K(sqrt(c)) (or K when c is zero), if it exists.
  std::optional<Quad> sqrt() const {
    if (is_zero()) return *this;
    if (b_.is_zero()) {
      if (auto r = a_.sqrt()) return Quad(*r, E{}, c_);
      if (c_.is_zero()) return std::nullopt;
      if (auto w = (a_ / c_).sqrt()) return Quad(a_ * E{}, *w, c_);
      return std::nullopt;
    }
    auto n = norm().sqrt();
    if (!n) return std::nullopt;
    const E two = a_.make(2);
    for (const E& cand : {(a_ + *n) / two, (a_ - *n) / two}) {
      if (cand.is_zero()) continue;
      if (auto u = cand.sqrt()) {
        Quad r(*u, b_ / (two * *u), c_);
        if (r * r == *this) return r;
      }
    }
    return std::nullopt;
  }

  std::string to_string() const {
    if (b_.is_zero()) return a_.to_string();
    return "(" + a_.to_string() + " + " + b_.to_string() + "*sqrt(" + c_.to_string() + "))";
  }

 private:
  static const E& pick(const Quad& x, const Quad& y) { return x.c_.is_zero() ? y.c_ : x.c_; }

  E a_{}, b_{}, c_{};
};

template <class E>
inline E unit_like(const E& x) {
  return x.make(1);
}

}  // namespace ffspace
