#pragma once

/**
 * @file curve.hpp
 * @brief Curve models (the line, or y^2 = D(x)) and elements a + b*y of
 *        their function fields.
 */

#include <memory>
#include <string>

#include "ffspace/factor.hpp"
#include "ffspace/ratfunc.hpp"

namespace ffspace {

enum class CurveKind { Rational, Quadratic };

template <class F>
class Curve {
 public:
  using Field = F;
  using E = typename F::Elem;

  static std::shared_ptr<const Curve> rational(F field) {
    return std::shared_ptr<const Curve>(new Curve(std::move(field), CurveKind::Rational, {}));
  }

  /// y^2 = D; D must be square-free of degree 1..4.
  static std::shared_ptr<const Curve> quadratic(F field, Poly<E> D) {
    if (D.degree() < 1 || D.degree() > 4)
      throw InputError("curve: deg D must be between 1 and 4, got " + std::to_string(D.degree()));
    if (gcd(D, D.derivative()).degree() > 0) throw InputError("curve: D = " + D.to_string() + " is not square-free");
    return std::shared_ptr<const Curve>(new Curve(std::move(field), CurveKind::Quadratic, std::move(D)));
  }

  const F& field() const { return field_; }
  CurveKind kind() const { return kind_; }
  bool is_rational() const { return kind_ == CurveKind::Rational; }
  const Poly<E>& D() const { return D_; }
  int d() const { return is_rational() ? 0 : D_.degree(); }
  int genus() const { return is_rational() ? 0 : (D_.degree() - 1) / 2; }
  E one() const { return field_.one(); }
  E zero() const { return field_.zero(); }

  /// Weight of x^i y^j: the pole order at infinity (summed over the places
  /// at infinity for even deg D).
  int weight(int i, int j) const { return is_rational() ? i : 2 * i + d() * j; }

  /// Weight of the polynomial numerator A + B*y (-1 for zero).
  int weight(const Poly<E>& A, const Poly<E>& B) const {
    int w = A.is_zero() ? -1 : weight(A.degree(), 0);
    if (!B.is_zero()) w = std::max(w, weight(B.degree(), 1));
    return w;
  }

  std::string to_string() const { return is_rational() ? "rational" : "y^2 = " + D_.to_string(); }

  friend bool operator==(const Curve& a, const Curve& b) {
    return a.field_ == b.field_ && a.kind_ == b.kind_ && a.D_ == b.D_;
  }

 private:
  Curve(F f, CurveKind k, Poly<E> D) : field_(std::move(f)), kind_(k), D_(std::move(D)) {}

  F field_;
  CurveKind kind_;
  Poly<E> D_;
};

template <class F>
using CurvePtr = std::shared_ptr<const Curve<F>>;

/// Polynomial numerator A + B*y over a monic denominator.
template <class E>
struct Numerator {
  Poly<E> A, B;
  bool is_zero() const { return A.is_zero() && B.is_zero(); }
  friend bool operator==(const Numerator&, const Numerator&) = default;
};

/// A + B*y reduced by y^2 = D.
template <class E>
Numerator<E> mul_numerators(const Numerator<E>& u, const Numerator<E>& v, const Poly<E>& D) {
  return {u.A * v.A + u.B * v.B * D, u.A * v.B + u.B * v.A};
}

/// A^2 - B^2 D.
template <class E>
Poly<E> norm(const Numerator<E>& u, const Poly<E>& D) {
  return u.A * u.A - u.B * u.B * D;
}

/// Element a + b*y of the function field (b = 0 on the line).
template <class F>
class Element {
 public:
  using E = typename F::Elem;

  Element() = default;
  Element(CurvePtr<F> c, RatFunc<E> a, RatFunc<E> b = {}) : curve_(std::move(c)), a_(std::move(a)), b_(std::move(b)) {
    if (curve_->is_rational() && !b_.is_zero()) throw InputError("y is not defined on the rational curve");
  }

  static Element constant(CurvePtr<F> c, const E& v) {
    return Element(c, RatFunc<E>(Poly<E>::constant(v)));
  }
  static Element from_int(CurvePtr<F> c, std::int64_t n) {
    const E v = c->field().from_int(n);
    return constant(std::move(c), v);
  }
  static Element x(CurvePtr<F> c) {
    const E one = c->one();
    return Element(c, RatFunc<E>(Poly<E>::x(one)));
  }
  static Element y(CurvePtr<F> c) {
    const E one = c->one();
    return Element(c, RatFunc<E>(), RatFunc<E>(Poly<E>::constant(one)));
  }
  /// (A + B*y) / den.
  static Element from_numerator(CurvePtr<F> c, const Numerator<E>& n, const Poly<E>& den) {
    return Element(c, RatFunc<E>(n.A, den), RatFunc<E>(n.B, den));
  }

  const CurvePtr<F>& curve() const { return curve_; }
  const RatFunc<E>& a() const { return a_; }
  const RatFunc<E>& b() const { return b_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_constant() const { return b_.is_zero() && a_.is_polynomial() && a_.num().degree() <= 0; }

  /// Common-denominator form: (A + B*y) / den with den monic.
  std::pair<Numerator<E>, Poly<E>> numerator_form() const {
    const E one = curve_->one();
    Poly<E> da = a_.is_zero() ? Poly<E>::constant(one) : a_.den();
    Poly<E> db = b_.is_zero() ? Poly<E>::constant(one) : b_.den();
    Poly<E> den = lcm(da, db);
    Numerator<E> n{a_.is_zero() ? Poly<E>() : a_.num() * exact_div(den, da),
                   b_.is_zero() ? Poly<E>() : b_.num() * exact_div(den, db)};
    return {n, den};
  }

  friend Element operator+(const Element& f, const Element& g) { return Element(f.pick(g), f.a_ + g.a_, f.b_ + g.b_); }
  friend Element operator-(const Element& f, const Element& g) { return Element(f.pick(g), f.a_ - g.a_, f.b_ - g.b_); }
  Element operator-() const { return Element(curve_, -a_, -b_); }
  friend Element operator*(const Element& f, const Element& g) {
    const auto& c = f.pick(g);
    if (c->is_rational()) return Element(c, f.a_ * g.a_);
    const RatFunc<E> D(c->D());
    return Element(c, f.a_ * g.a_ + f.b_ * g.b_ * D, f.a_ * g.b_ + f.b_ * g.a_);
  }
  friend Element operator*(const E& s, const Element& f) {
    const RatFunc<E> k(Poly<E>::constant(s));
    return Element(f.curve_, k * f.a_, k * f.b_);
  }

  /// a^2 - b^2 D, the norm down to K(x).
  RatFunc<E> norm() const {
    if (curve_->is_rational()) return a_ * a_;
    return a_ * a_ - b_ * b_ * RatFunc<E>(curve_->D());
  }

  Element inverse() const {
    if (is_zero()) throw std::domain_error("inverse of the zero function");
    const RatFunc<E> n = norm().inverse();
    return Element(curve_, a_ * n, -(b_ * n));
  }
  friend Element operator/(const Element& f, const Element& g) { return f * g.inverse(); }
  friend bool operator==(const Element& f, const Element& g) { return f.a_ == g.a_ && f.b_ == g.b_; }

  Element pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    Element r = from_int(curve_, 1);
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  /// Parseable by the expression grammar.
  std::string to_string() const {
    if (b_.is_zero()) return a_.to_string();
    std::string yb = b_.num() == Poly<E>::constant(curve_->one()) && b_.is_polynomial() ? "y" : "(" + b_.to_string() + ")*y";
    if (a_.is_zero()) return yb;
    return a_.to_string() + " + " + yb;
  }

 private:
  const CurvePtr<F>& pick(const Element& g) const {
    if (curve_ && g.curve_ && curve_ != g.curve_ && !(*curve_ == *g.curve_))
      throw std::logic_error("elements on different curves");
    return curve_ ? curve_ : g.curve_;
  }

  CurvePtr<F> curve_;
  RatFunc<E> a_, b_;
};

}  // namespace ffspace
