#pragma once

/**
 * @file poly.hpp
 * @brief Dense univariate polynomials over an exact scalar type.
 */

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "ffspace/field.hpp"

namespace ffspace {

inline bool prints_negative(const Fp&) { return false; }
inline bool prints_negative(const Rational& r) { return r.sign() < 0; }
template <class E>
bool prints_negative(const Quad<E>&) {
  return false;
}

/// Dense polynomial, lowest degree first. The zero polynomial has no
/// coefficients; otherwise the leading coefficient is non-zero.
template <class E>
class Poly {
 public:
  using Scalar = E;

  Poly() = default;
  explicit Poly(std::vector<E> c) : c_(std::move(c)) { trim(); }

  static Poly constant(const E& c) { return Poly(std::vector<E>{c}); }
  static Poly monomial(const E& c, int k) {
    std::vector<E> v(static_cast<std::size_t>(k) + 1, c * E{});
    v.back() = c;
    return Poly(std::move(v));
  }
  /// The polynomial x over the field of `unit`.
  static Poly x(const E& unit) { return monomial(unit_like(unit), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<E>& coeffs() const { return c_; }
  E coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : E{}; }
  const E& lead() const { return c_.back(); }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<E> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<E> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
    return Poly(std::move(r));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<E> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
  }
  friend Poly operator*(const E& s, const Poly& a) {
    std::vector<E> r(a.c_);
    for (auto& x : r) x = s * x;
    return Poly(std::move(r));
  }
  Poly operator-() const {
    std::vector<E> r(c_);
    for (auto& x : r) x = -x;
    return Poly(std::move(r));
  }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Horner evaluation at a point of any ring that accepts E.
  template <class R>
  R eval(const R& at) const {
    R acc = at * R{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + R(*it);
    return acc;
  }
  E operator()(const E& at) const { return eval<E>(at); }

  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<E> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = lead().make(static_cast<std::int64_t>(i)) * c_[i];
    return Poly(std::move(r));
  }

  Poly monic() const {
    if (is_zero()) return {};
    return lead().inverse() * *this;
  }

  /// p(x + a)
  Poly shift(const E& a) const {
    std::vector<E> r(c_);
    const std::size_t n = r.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = n - 1; j > i; --j) r[j - 1] += a * r[j];
    return Poly(std::move(r));
  }

  std::string to_string(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
      const E& c = c_[static_cast<std::size_t>(k)];
      if (c.is_zero()) continue;
      const bool neg = prints_negative(c);
      const E mag = neg ? -c : c;
      if (out.empty()) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
      if (k == 0)
        out += mag.to_string();
      else if (mag.is_one())
        out += mono;
      else
        out += mag.to_string() + "*" + mono;
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<E> c_;
};

template <class E>
std::pair<Poly<E>, Poly<E>> divmod(const Poly<E>& a, const Poly<E>& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly<E>{}, a};
  std::vector<E> r(a.coeffs());
  std::vector<E> q(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  const E inv = b.lead().inverse();
  const auto db = static_cast<std::size_t>(b.degree());
  for (std::size_t k = q.size(); k-- > 0;) {
    const E t = r[k + db] * inv;
    q[k] = t;
    if (t.is_zero()) continue;
    for (std::size_t j = 0; j <= db; ++j) r[k + j] -= t * b.coeffs()[j];
  }
  r.resize(db);
  return {Poly<E>(std::move(q)), Poly<E>(std::move(r))};
}

template <class E>
Poly<E> operator%(const Poly<E>& a, const Poly<E>& b) {
  return divmod(a, b).second;
}

/// Exact quotient; throws if b does not divide a.
template <class E>
Poly<E> exact_div(const Poly<E>& a, const Poly<E>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::logic_error("exact_div: non-zero remainder");
  return q;
}

/// Monic gcd (zero if both inputs are zero).
template <class E>
Poly<E> gcd(Poly<E> a, Poly<E> b) {
  while (!b.is_zero()) {
    auto r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

template <class E>
Poly<E> lcm(const Poly<E>& a, const Poly<E>& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return exact_div(a * b, gcd(a, b)).monic();
}

template <class E>
Poly<E> pow(const Poly<E>& a, int e) {
  Poly<E> r = Poly<E>::constant(unit_like(a.lead()));
  for (int i = 0; i < e; ++i) r = r * a;
  return r;
}

/// Coefficient-wise lift into the quadratic extension scalar type.
template <class E>
Poly<Quad<E>> lift(const Poly<E>& p) {
  std::vector<Quad<E>> c;
  c.reserve(p.coeffs().size());
  for (const auto& x : p.coeffs()) c.emplace_back(x);
  return Poly<Quad<E>>(std::move(c));
}

}  // namespace ffspace
