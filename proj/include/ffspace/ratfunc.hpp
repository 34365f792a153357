#pragma once

/**
 * @file ratfunc.hpp
 * @brief Rational functions num/den in lowest terms with monic denominator.
 */

#include <string>

#include "ffspace/poly.hpp"

namespace ffspace {

template <class E>
class RatFunc {
 public:
  RatFunc() = default;
  RatFunc(Poly<E> num) : num_(std::move(num)) {
    if (!num_.is_zero()) den_ = Poly<E>::constant(unit_like(num_.lead()));
  }
  RatFunc(Poly<E> num, Poly<E> den) : num_(std::move(num)), den_(std::move(den)) { canonicalize(); }

  const Poly<E>& num() const { return num_; }
  /// Monic denominator; the empty polynomial stands for 1 when num is zero.
  const Poly<E>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() <= 0; }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  RatFunc inverse() const {
    if (is_zero()) throw std::domain_error("RatFunc: inverse of zero");
    return RatFunc(den_, num_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  std::string to_string(const std::string& var = "x") const {
    if (is_polynomial()) return num_.to_string(var);
    return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
  }

 private:
  void canonicalize() {
    if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
    if (num_.is_zero()) {
      den_ = Poly<E>();
      return;
    }
    const Poly<E> g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = exact_div(num_, g);
      den_ = exact_div(den_, g);
    }
    const E l = den_.lead();
    if (!l.is_one()) {
      const E li = l.inverse();
      num_ = li * num_;
      den_ = li * den_;
    }
  }

  Poly<E> num_;
  Poly<E> den_;
};

}  // namespace ffspace
