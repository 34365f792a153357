#pragma once

/**
 * @file place.hpp
 * @brief Places as local parametrizations t -> (xi(t), eta(t)), place
 *        enumeration above polynomials and at infinity, and valuations.
 *
 * xi is stored exactly; eta = sqrt(D(xi)) is expanded lazily with a fixed
 * choice of leading root, which is what distinguishes the two branches of a
 * split place. Series coefficients live in K(sqrt(c)) so that places of
 * degree 2 use the same machinery as rational ones.
 */

#include <algorithm>
#include <string>
#include <vector>

#include "ffspace/curve.hpp"
#include "ffspace/series.hpp"

namespace ffspace {

enum class PlaceKind {
  FiniteRationalLine,
  FiniteSplit,
  FiniteRamified,
  FiniteInert,
  Infinite,
  InfiniteSplit,
  InfiniteRamified,
  InfiniteInert,
};

inline std::string to_string(PlaceKind k) {
  switch (k) {
    case PlaceKind::FiniteRationalLine: return "finite-rational-line";
    case PlaceKind::FiniteSplit: return "finite-split";
    case PlaceKind::FiniteRamified: return "finite-ramified";
    case PlaceKind::FiniteInert: return "finite-inert";
    case PlaceKind::Infinite: return "infinite";
    case PlaceKind::InfiniteSplit: return "infinite-split";
    case PlaceKind::InfiniteRamified: return "infinite-ramified";
    case PlaceKind::InfiniteInert: return "infinite-inert";
  }
  return "?";
}

template <class E>
struct Place {
  using Q = Quad<E>;
  using Series = LaurentSeries<Q>;

  std::string id;
  int degree = 1;
  int ramification = 1;
  PlaceKind kind = PlaceKind::Infinite;
  Poly<E> below;   ///< monic irreducible p(x) under a finite place; zero at infinity
  Series xi;       ///< exact expansion of x
  Q eta_root{};    ///< leading coefficient of the expansion of y (quadratic models)
  E ext{};         ///< c with residue field K(sqrt(c)); zero when the residue field is K

  bool at_infinity() const { return below.is_zero(); }
  friend bool operator==(const Place& a, const Place& b) { return a.id == b.id; }
  friend bool operator<(const Place& a, const Place& b) { return a.id < b.id; }
};

namespace detail {

template <class E>
Quad<E> quad_pow(Quad<E> b, int e) {
  Quad<E> r = b.make(1);
  for (int i = 0; i < e; ++i) r = r * b;
  return r;
}

template <class E>
std::string place_value(const E& v) {
  return v.to_string();
}

}  // namespace detail

/// Places at infinity, in id order.
template <class F>
std::vector<Place<typename F::Elem>> places_at_infinity(const Curve<F>& c) {
  using E = typename F::Elem;
  using Q = Quad<E>;
  using S = LaurentSeries<Q>;
  const E one = c.one();
  std::vector<Place<E>> out;
  Place<E> p;
  p.below = Poly<E>();
  if (c.is_rational()) {
    p.id = "Pinf";
    p.kind = PlaceKind::Infinite;
    p.xi = S::monomial(Q(one), -1);
    out.push_back(p);
    return out;
  }
  const int d = c.d();
  const E lc = c.D().lead();
  if (d % 2 == 1) {
    p.id = "Pinf";
    p.kind = PlaceKind::InfiniteRamified;
    p.ramification = 2;
    p.xi = S::monomial(Q(lc), -2);
    p.eta_root = detail::quad_pow(Q(lc), (d + 1) / 2);
    out.push_back(p);
    return out;
  }
  p.xi = S::monomial(Q(one), -1);
  if (auto s = lc.sqrt()) {
    p.kind = PlaceKind::InfiniteSplit;
    p.id = "Pinf+";
    p.eta_root = Q(*s);
    out.push_back(p);
    p.id = "Pinf-";
    p.eta_root = Q(-*s);
    out.push_back(p);
  } else {
    p.kind = PlaceKind::InfiniteInert;
    p.id = "Pinf";
    p.degree = 2;
    p.ext = lc;
    p.eta_root = Q::root_of(lc);
    out.push_back(p);
  }
  return out;
}

/// Places above a monic irreducible polynomial of degree 1 or 2.
template <class F>
std::vector<Place<typename F::Elem>> places_above(const Curve<F>& c, const Poly<typename F::Elem>& p) {
  using E = typename F::Elem;
  using Q = Quad<E>;
  using S = LaurentSeries<Q>;
  if (p.degree() < 1) throw std::logic_error("places_above: constant polynomial");
  if (p.degree() > 2)
    throw UnsupportedError("places above the degree-" + std::to_string(p.degree()) + " factor " + p.to_string() +
                           " need residue fields of degree > 2");
  const E one = c.one();
  const Poly<E> m = p.monic();
  std::vector<Place<E>> out;
  Place<E> pl;
  pl.below = m;

  // theta: a root of m in K or in K(sqrt(disc)).
  Q theta;
  E ext = c.zero();
  if (m.degree() == 1) {
    theta = Q(-m.coeff(0));
  } else {
    const E u = m.coeff(1), w = m.coeff(0);
    const E disc = u * u - one.make(4) * w;
    if (disc.is_square()) throw InputError("places_above: " + m.to_string() + " is reducible");
    const E half = one.make(2).inverse();
    theta = Q(-u * half, half, disc);
    ext = disc;
  }
  const S t = S::monomial(Q(one), 1);
  const std::string bracket = "P[" + m.to_string() + "]";

  if (c.is_rational()) {
    pl.kind = PlaceKind::FiniteRationalLine;
    pl.degree = m.degree();
    pl.ext = ext;
    pl.id = m.degree() == 1 ? "P(" + detail::place_value(-m.coeff(0)) + ")" : bracket;
    pl.xi = S(theta) + t;
    out.push_back(pl);
    return out;
  }

  const Poly<E>& D = c.D();
  const Q Dth = D.template eval<Q>(theta);
  if (Dth.is_zero()) {
    const Poly<E> Eq = exact_div(D, m);
    const Q k = m.derivative().template eval<Q>(theta) * Eq.template eval<Q>(theta);
    pl.kind = PlaceKind::FiniteRamified;
    pl.ramification = 2;
    pl.degree = m.degree();
    pl.ext = ext;
    pl.id = m.degree() == 1 ? "P(" + detail::place_value(-m.coeff(0)) + ",0)" : bracket;
    pl.xi = S(theta) + S::monomial(k, 2);
    pl.eta_root = k;
    out.push_back(pl);
    return out;
  }
  pl.xi = S(theta) + t;
  if (m.degree() == 1) {
    const E a = -m.coeff(0);
    if (auto r = Dth.re().sqrt()) {
      pl.kind = PlaceKind::FiniteSplit;
      for (const E& b : {*r, -*r}) {
        pl.id = "P(" + detail::place_value(a) + "," + detail::place_value(b) + ")";
        pl.eta_root = Q(b);
        out.push_back(pl);
      }
    } else {
      pl.kind = PlaceKind::FiniteInert;
      pl.degree = 2;
      pl.ext = Dth.re();
      pl.id = bracket;
      pl.eta_root = Q::root_of(Dth.re());
      out.push_back(pl);
    }
    return out;
  }
  auto r = Dth.sqrt();
  if (!r)
    throw UnsupportedError("the place above " + m.to_string() + " is inert of degree 4; only degrees <= 2 are supported");
  pl.kind = PlaceKind::FiniteSplit;
  pl.degree = 2;
  pl.ext = ext;
  pl.id = bracket + "+";
  pl.eta_root = *r;
  out.push_back(pl);
  pl.id = bracket + "-";
  pl.eta_root = -*r;
  out.push_back(pl);
  return out;
}

/// Places above every irreducible factor of f (f != 0), plus, optionally,
/// the places at infinity. Sorted by id, without duplicates.
template <class F>
std::vector<Place<typename F::Elem>> places_over(const Curve<F>& c, const Poly<typename F::Elem>& f, bool with_infinity) {
  using E = typename F::Elem;
  std::vector<Place<E>> out;
  if (with_infinity) out = places_at_infinity(c);
  if (f.degree() > 0) {
    const auto fac = factor(f);
    for (const auto& g : fac.factors) {
      if (!g.certified)
        throw UnsupportedError("unsplit factor " + g.poly.to_string() + ": cannot enumerate the places above it");
      for (auto& p : places_above(c, g.poly)) out.push_back(std::move(p));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Expansion of functions at a fixed place; caches the expansion of y.
template <class F>
class LocalExpander {
 public:
  using E = typename F::Elem;
  using Q = Quad<E>;
  using Series = LaurentSeries<Q>;

  LocalExpander(CurvePtr<F> c, Place<E> p) : curve_(std::move(c)), place_(std::move(p)) {
    if (!curve_->is_rational()) Dxi_ = at(curve_->D());
  }

  const Place<E>& place() const { return place_; }
  const CurvePtr<F>& curve() const { return curve_; }

  /// Exact expansion of a polynomial in x.
  Series at(const Poly<E>& A) const {
    if (A.is_zero()) return {};
    return A.template eval<Series>(place_.xi);
  }

  /// Expansion of y known to at least absolute precision `abs`.
  const Series& eta(int abs) {
    if (eta_valid_ && eta_.precision() >= abs) return eta_;
    const int half = Dxi_.order() / 2;
    int rel = std::max(16, abs - half);
    if (eta_valid_) rel = std::max(rel, 2 * (eta_.precision() - half));
    eta_ = Dxi_.sqrt(place_.eta_root, rel);
    eta_valid_ = true;
    return eta_;
  }

  /// Expansion of A + B*y to at least absolute precision `abs`.
  Series expand(const Numerator<E>& n, int abs) {
    Series s = at(n.A);
    if (n.B.is_zero()) return s;
    const Series b = at(n.B);
    return s + b * eta(abs - b.order());
  }

  /// v_P(A + B*y); kExact for zero.
  int valuation(const Numerator<E>& n) {
    if (n.is_zero()) return kExact;
    if (n.B.is_zero()) return at(n.A).order();
    const Series a = at(n.A), b = at(n.B);
    const int vy = Dxi_.order() / 2;
    const int low = std::min(a.order(), b.order() + vy);
    // v(A + By) + v(A - By) = v(Norm) and v(A - By) >= low.
    const int bound = at(norm(n, curve_->D())).order() - low;
    for (int target = low + 32;; target = low + 2 * (target - low)) {
      const Series s = a + b * eta(target - b.order());
      if (!s.is_zero()) return s.order();
      if (target > bound + 1) throw PrecisionError("valuation: expansion vanished beyond the norm bound");
    }
  }

  int valuation(const Poly<E>& A) const { return A.is_zero() ? kExact : at(A).order(); }

  int valuation(const Element<F>& f) {
    if (f.is_zero()) return kExact;
    auto [n, den] = f.numerator_form();
    return valuation(n) - valuation(den);
  }

 private:
  CurvePtr<F> curve_;
  Place<E> place_;
  Series Dxi_;
  Series eta_;
  bool eta_valid_ = false;
};

}  // namespace ffspace
