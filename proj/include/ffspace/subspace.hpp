#pragma once

/**
 * @file subspace.hpp
 * @brief Finite-dimensional K-subspaces of the function field.
 *
 * A subspace is stored as (1/den) * N where N is a K-space of polynomial
 * numerators A + B*y and den is monic with gcd(den, all A, B) = 1. The
 * numerator rows are kept in reduced echelon form with respect to the
 * monomials x^i y^j ordered by decreasing weight (ties: pure x-power
 * first), so equal subspaces have identical representations.
 */

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ffspace/divisor.hpp"
#include "ffspace/linalg.hpp"

namespace ffspace {

template <class F>
class Subspace {
 public:
  using E = typename F::Elem;
  using Num = Numerator<E>;

  Subspace() = default;

  /// Span of elements; throws InputError if they are all zero.
  static Subspace span(const std::vector<Element<F>>& gens) {
    if (gens.empty()) throw InputError("span of an empty list");
    const auto& c = gens.front().curve();
    const E one = c->one();
    Poly<E> den = Poly<E>::constant(one);
    std::vector<std::pair<Num, Poly<E>>> forms;
    for (const auto& g : gens) {
      forms.push_back(g.numerator_form());
      den = lcm(den, forms.back().second);
    }
    std::vector<Num> nums;
    for (auto& [n, d] : forms) {
      const Poly<E> k = exact_div(den, d);
      nums.push_back({n.A * k, n.B * k});
    }
    return from_numerators(c, den, nums);
  }

  /// (1/den) * span(nums), canonicalized.
  static Subspace from_numerators(const CurvePtr<F>& c, Poly<E> den, std::vector<Num> nums) {
    nums.erase(std::remove_if(nums.begin(), nums.end(), [](const Num& n) { return n.is_zero(); }), nums.end());
    if (nums.empty()) throw InputError("span of zero elements");
    Poly<E> g = den;
    for (const auto& n : nums) {
      g = gcd(g, n.A);
      g = gcd(g, n.B);
    }
    const E inv = den.lead().inverse();
    Poly<E> q = exact_div(den, g);
    for (auto& n : nums) {
      n.A = inv * exact_div(n.A, g);
      n.B = inv * exact_div(n.B, g);
    }
    Subspace s;
    s.curve_ = c;
    s.den_ = inv * q;
    s.rows_ = echelonize(*c, nums);
    return s;
  }

  const CurvePtr<F>& curve() const { return curve_; }
  const Poly<E>& den() const { return den_; }
  const std::vector<Num>& numerators() const { return rows_; }
  int dim() const { return static_cast<int>(rows_.size()); }

  std::vector<Element<F>> basis() const {
    std::vector<Element<F>> out;
    for (const auto& n : rows_) out.push_back(Element<F>::from_numerator(curve_, n, den_));
    return out;
  }

  /// Largest weight among the numerators (a bound on their pole order at infinity).
  int max_weight() const {
    int w = 0;
    for (const auto& n : rows_) w = std::max(w, curve_->weight(n.A, n.B));
    return w;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.den_ == b.den_ && a.rows_ == b.rows_; }

  /// f * S for a non-zero element f.
  Subspace scaled(const Element<F>& f) const {
    auto [n, d] = f.numerator_form();
    std::vector<Num> nums;
    for (const auto& r : rows_) nums.push_back(mul_numerators(r, n, curve_->D()));
    return from_numerators(curve_, den_ * d, nums);
  }

  bool contains(const Element<F>& f) const {
    if (f.is_zero()) return true;
    std::vector<Element<F>> g = basis();
    g.push_back(f);
    return span(g).dim() == dim();
  }

  bool contains(const Subspace& t) const { return sum(*this, t).dim() == dim(); }

  friend Subspace sum(const Subspace& s, const Subspace& t) {
    const Poly<E> den = lcm(s.den_, t.den_);
    std::vector<Num> nums;
    for (const auto* x : {&s, &t}) {
      const Poly<E> k = exact_div(den, x->den_);
      for (const auto& r : x->rows_) nums.push_back({r.A * k, r.B * k});
    }
    return from_numerators(s.curve_, den, nums);
  }

  /// The first k basis vectors of an explicit list, spanned.
  std::string to_string() const {
    std::string out = "<";
    bool first = true;
    for (const auto& e : basis()) {
      out += (first ? "" : ", ") + e.to_string();
      first = false;
    }
    return out + ">";
  }

  /// Column layout shared by the echelon form: (i, j) monomials, highest first.
  static std::vector<std::pair<int, int>> columns(const Curve<F>& c, int maxA, int maxB) {
    std::vector<std::pair<int, int>> cols;
    for (int i = 0; i <= maxA; ++i) cols.emplace_back(i, 0);
    for (int i = 0; i <= maxB; ++i) cols.emplace_back(i, 1);
    std::sort(cols.begin(), cols.end(), [&](const auto& u, const auto& v) {
      const int wu = c.weight(u.first, u.second), wv = c.weight(v.first, v.second);
      if (wu != wv) return wu > wv;
      return u.second < v.second;
    });
    return cols;
  }

  /// Coordinates of numerators in a common monomial layout.
  static Matrix<E> coordinates(const std::vector<std::pair<int, int>>& cols, const std::vector<Num>& nums, const E& zero) {
    Matrix<E> m;
    for (const auto& n : nums) {
      std::vector<E> row(cols.size(), zero);
      for (std::size_t k = 0; k < cols.size(); ++k)
        row[k] = cols[k].second == 0 ? n.A.coeff(cols[k].first) : n.B.coeff(cols[k].first);
      m.push_back(std::move(row));
    }
    return m;
  }

  static std::pair<int, int> degree_bounds(const std::vector<Num>& nums) {
    int maxA = -1, maxB = -1;
    for (const auto& n : nums) {
      maxA = std::max(maxA, n.A.degree());
      maxB = std::max(maxB, n.B.degree());
    }
    return {maxA, maxB};
  }

 private:
  static std::vector<Num> echelonize(const Curve<F>& c, const std::vector<Num>& nums) {
    const auto [maxA, maxB] = degree_bounds(nums);
    const auto cols = columns(c, maxA, maxB);
    Matrix<E> m = coordinates(cols, nums, c.zero());
    rref(m);
    std::vector<Num> out;
    for (auto it = m.rbegin(); it != m.rend(); ++it) {
      std::vector<E> a(static_cast<std::size_t>(maxA + 1), c.zero()), b(static_cast<std::size_t>(maxB + 1), c.zero());
      for (std::size_t k = 0; k < cols.size(); ++k)
        (cols[k].second == 0 ? a : b)[static_cast<std::size_t>(cols[k].first)] = (*it)[k];
      out.push_back({Poly<E>(std::move(a)), Poly<E>(std::move(b))});
    }
    return out;
  }

  CurvePtr<F> curve_;
  Poly<E> den_;
  std::vector<Num> rows_;  // ascending pivot weight
};

/// The span of all products st.
template <class F>
Subspace<F> product(const Subspace<F>& s, const Subspace<F>& t) {
  std::vector<Numerator<typename F::Elem>> nums;
  const auto& D = s.curve()->D();
  for (const auto& a : s.numerators())
    for (const auto& b : t.numerators()) nums.push_back(mul_numerators(a, b, D));
  return Subspace<F>::from_numerators(s.curve(), s.den() * t.den(), nums);
}

/// dim S^2 - 2 dim S + 1.
template <class F>
int combinatorial_genus(const Subspace<F>& s) {
  return product(s, s).dim() - 2 * s.dim() + 1;
}

template <class F>
struct FilteredBasis {
  using E = typename F::Elem;
  Place<E> place;
  std::vector<Element<F>> elements;       ///< e_1, ..., e_n
  std::vector<Numerator<E>> numerators;   ///< numerators of e_i over the subspace denominator
  Poly<E> den;
  std::vector<int> valuations;            ///< strictly decreasing

  /// S_k = span(e_1, ..., e_k), 1 <= k <= n.
  Subspace<F> filtration(int k) const {
    std::vector<Numerator<E>> nums(numerators.begin(), numerators.begin() + k);
    return Subspace<F>::from_numerators(elements.front().curve(), den, nums);
  }
};

namespace detail {

template <class F>
void require_degree_one(const Place<typename F::Elem>& p) {
  if (p.degree != 1)
    throw UnsupportedError("place " + p.id + " has degree " + std::to_string(p.degree) +
                           "; filtered bases need a place with residue field K");
}

}  // namespace detail

/// Minimum valuation of S at any place (degree unrestricted).
template <class F>
int min_valuation(const Subspace<F>& s, const Place<typename F::Elem>& p) {
  LocalExpander<F> ex(s.curve(), p);
  int o = kExact;
  for (const auto& n : s.numerators()) o = std::min(o, ex.valuation(n));
  return o - ex.valuation(s.den());
}

/// Canonical filtered basis at a degree-1 place: reduced so that each e_i
/// has leading coefficient 1 and no component at the other valuations.
template <class F>
FilteredBasis<F> filtered_basis(const Subspace<F>& s, const Place<typename F::Elem>& p) {
  using E = typename F::Elem;
  detail::require_degree_one<F>(p);
  LocalExpander<F> ex(s.curve(), p);
  const auto& nums = s.numerators();
  const std::size_t n = nums.size();
  int lo = kExact;
  for (const auto& u : nums) lo = std::min(lo, ex.valuation(u));
  const int hi = std::max(s.max_weight(), lo) + 1;
  const std::size_t w = static_cast<std::size_t>(hi - lo);
  const E zero = s.curve()->zero(), one = s.curve()->one();
  Matrix<E> m;
  for (std::size_t i = 0; i < n; ++i) {
    const auto ser = ex.expand(nums[i], hi);
    std::vector<E> row(w + n, zero);
    for (std::size_t k = 0; k < w; ++k) {
      const auto c = ser.coeff(lo + static_cast<int>(k));
      if (!c.in_base()) throw TheoremViolation("expansion at a degree-1 place left the base field");
      row[k] = c.re();
    }
    row[w + i] = one;
    m.push_back(std::move(row));
  }
  const auto piv = rref(m);
  if (piv.size() != n || piv.back() >= w) throw TheoremViolation("filtered basis: valuations are not distinct");
  const int vden = ex.valuation(s.den());
  FilteredBasis<F> fb;
  fb.place = p;
  fb.den = s.den();
  for (std::size_t r = n; r-- > 0;) {
    Numerator<E> acc;
    for (std::size_t j = 0; j < n; ++j) {
      const E c = m[r][w + j];
      if (c.is_zero()) continue;
      acc.A += c * nums[j].A;
      acc.B += c * nums[j].B;
    }
    fb.numerators.push_back(acc);
    fb.elements.push_back(Element<F>::from_numerator(s.curve(), acc, s.den()));
    fb.valuations.push_back(lo + static_cast<int>(piv[r]) - vden);
  }
  return fb;
}

template <class F>
std::set<int> valuation_set(const Subspace<F>& s, const Place<typename F::Elem>& p) {
  const auto fb = filtered_basis(s, p);
  return std::set<int>(fb.valuations.begin(), fb.valuations.end());
}

/// e_1^{-1} S for the head e_1 of the filtered basis at p, so that 1 is in S.
template <class F>
Subspace<F> normalize_at(const Subspace<F>& s, const Place<typename F::Elem>& p) {
  const auto fb = filtered_basis(s, p);
  return s.scaled(fb.elements.front().inverse());
}

/// D_S: the smallest divisor D with S inside L(D).
template <class F>
Divisor<F> divisor_of(const Subspace<F>& s) {
  using E = typename F::Elem;
  const auto& c = s.curve();
  Poly<E> common;
  for (const auto& n : s.numerators()) common = gcd(common, c->is_rational() ? n.A : norm(n, c->D()));
  Divisor<F> d(c);
  for (const auto& p : places_over(*c, s.den() * common, true)) d.add(p, -min_valuation(s, p));
  return d;
}

/// U separates P and Q iff U_P != U_Q, with U_P = {u : v_P(u) > min v_P(U)}.
template <class F>
bool separates(const Subspace<F>& u, const Place<typename F::Elem>& p, const Place<typename F::Elem>& q) {
  if (u.dim() <= 1) return false;
  const auto fp = filtered_basis(u, p), fq = filtered_basis(u, q);
  return !(fp.filtration(u.dim() - 1) == fq.filtration(u.dim() - 1));
}

}  // namespace ffspace
