#pragma once

/**
 * @file relation.hpp
 * @brief Algebraic relations between the second and third filtered basis
 *        vectors of a space of combinatorial genus at most 1, and a
 *        singularity test for plane cubics.
 */

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ffspace/factor.hpp"
#include "ffspace/subspace.hpp"

namespace ffspace {

/// Polynomial in two variables x, y over K.
template <class E>
class BiPoly {
 public:
  using Key = std::pair<int, int>;  // (i, j) -> x^i y^j

  BiPoly() = default;

  static BiPoly monomial(const E& c, int i, int j) {
    BiPoly p;
    p.add(c, i, j);
    return p;
  }

  void add(const E& c, int i, int j) {
    if (c.is_zero()) return;
    auto it = t_.find({i, j});
    if (it == t_.end()) {
      t_.emplace(Key{i, j}, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }

  bool is_zero() const { return t_.empty(); }
  const std::map<Key, E>& terms() const { return t_; }
  E coeff(int i, int j) const {
    auto it = t_.find({i, j});
    return it == t_.end() ? E{} : it->second;
  }

  /// Total degree; -1 for zero.
  int degree() const {
    int d = -1;
    for (const auto& [k, c] : t_) d = std::max(d, k.first + k.second);
    return d;
  }
  int degree_y() const {
    int d = -1;
    for (const auto& [k, c] : t_) d = std::max(d, k.second);
    return d;
  }

  /// Homogeneous component of total degree k.
  BiPoly part(int k) const {
    BiPoly r;
    for (const auto& [key, c] : t_)
      if (key.first + key.second == k) r.t_.emplace(key, c);
    return r;
  }

  friend BiPoly operator+(BiPoly a, const BiPoly& b) {
    for (const auto& [k, c] : b.t_) a.add(c, k.first, k.second);
    return a;
  }
  friend BiPoly operator-(const BiPoly& a, const BiPoly& b) { return a + (-b); }
  BiPoly operator-() const {
    BiPoly r;
    for (const auto& [k, c] : t_) r.t_.emplace(k, -c);
    return r;
  }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r;
    for (const auto& [ka, ca] : a.t_)
      for (const auto& [kb, cb] : b.t_) r.add(ca * cb, ka.first + kb.first, ka.second + kb.second);
    return r;
  }
  friend BiPoly operator*(const E& s, const BiPoly& a) {
    BiPoly r;
    for (const auto& [k, c] : a.t_) r.add(s * c, k.first, k.second);
    return r;
  }
  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.t_ == b.t_; }

  BiPoly dx() const {
    BiPoly r;
    for (const auto& [k, c] : t_)
      if (k.first > 0) r.add(c.make(k.first) * c, k.first - 1, k.second);
    return r;
  }
  BiPoly dy() const {
    BiPoly r;
    for (const auto& [k, c] : t_)
      if (k.second > 0) r.add(c.make(k.second) * c, k.first, k.second - 1);
    return r;
  }

  /// Coefficients of y^0, y^1, ... as polynomials in x.
  std::vector<Poly<E>> in_y() const {
    std::vector<std::vector<E>> c(static_cast<std::size_t>(degree_y() + 1));
    for (const auto& [k, v] : t_) {
      auto& row = c[static_cast<std::size_t>(k.second)];
      if (row.size() <= static_cast<std::size_t>(k.first)) row.resize(static_cast<std::size_t>(k.first) + 1, v * E{});
      row[static_cast<std::size_t>(k.first)] = v;
    }
    std::vector<Poly<E>> out;
    for (auto& row : c) out.emplace_back(std::move(row));
    return out;
  }

  /// p(x + k*y, y).
  BiPoly shear(const E& k) const {
    if (is_zero()) return {};
    const E one = t_.begin()->second.make(1);
    const BiPoly lin = monomial(one, 1, 0) + monomial(k, 0, 1);
    BiPoly r;
    for (const auto& [key, c] : t_) {
      BiPoly term = monomial(c, 0, key.second);
      for (int i = 0; i < key.first; ++i) term = term * lin;
      r = r + term;
    }
    return r;
  }

  /// Value at (x, y) in any ring with the scalar action `lift`.
  template <class R, class Lift>
  R eval(const R& x, const R& y, const R& zero, Lift lift) const {
    R acc = zero;
    for (const auto& [k, c] : t_) {
      R m = lift(c);
      for (int i = 0; i < k.first; ++i) m = m * x;
      for (int j = 0; j < k.second; ++j) m = m * y;
      acc = acc + m;
    }
    return acc;
  }

  /// Scaled so the first printed term has coefficient 1.
  BiPoly normalized() const {
    if (is_zero()) return {};
    return first_term().second.inverse() * *this;
  }

  /// Terms by descending y-degree, then descending x-degree.
  std::string to_string() const {
    if (is_zero()) return "0";
    std::vector<std::pair<Key, E>> v(t_.begin(), t_.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return order(a.first, b.first); });
    std::string out;
    for (const auto& [k, c] : v) {
      const bool neg = prints_negative(c);
      const E mag = neg ? -c : c;
      if (out.empty())
        out += neg ? "-" : "";
      else
        out += neg ? " - " : " + ";
      std::string mono;
      auto pw = [](const char* var, int e) { return e == 1 ? std::string(var) : std::string(var) + "^" + std::to_string(e); };
      if (k.first > 0) mono += pw("x", k.first);
      if (k.second > 0) mono += (mono.empty() ? "" : "*") + pw("y", k.second);
      if (mono.empty())
        out += mag.to_string();
      else if (mag.is_one())
        out += mono;
      else
        out += mag.to_string() + "*" + mono;
    }
    return out;
  }

 private:
  static bool order(const Key& a, const Key& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first > b.first;
  }
  std::pair<Key, E> first_term() const {
    auto best = t_.begin();
    for (auto it = t_.begin(); it != t_.end(); ++it)
      if (order(it->first, best->first)) best = it;
    return *best;
  }

  std::map<Key, E> t_;
};

namespace detail {

/// Determinant over K[x] by fraction-free elimination.
template <class E>
Poly<E> det_bareiss(std::vector<std::vector<Poly<E>>> m, const E& one) {
  const std::size_t n = m.size();
  if (n == 0) return Poly<E>::constant(one);
  Poly<E> prev = Poly<E>::constant(one);
  bool neg = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t s = k + 1;
      while (s < n && m[s][k].is_zero()) ++s;
      if (s == n) return {};
      std::swap(m[k], m[s]);
      neg = !neg;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
      m[i][k] = {};
    }
    prev = m[k][k];
  }
  return neg ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

/// Res_y(f, g) as a polynomial in x.
template <class E>
Poly<E> resultant_y(const BiPoly<E>& f, const BiPoly<E>& g, const E& one) {
  const auto a = f.in_y(), b = g.in_y();
  const std::size_t m = a.size() - 1, n = b.size() - 1;
  const std::size_t size = m + n;
  if (size == 0) return Poly<E>::constant(one);
  std::vector<std::vector<Poly<E>>> s(size, std::vector<Poly<E>>(size));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) s[r][r + k] = a[m - k];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) s[n + r][r + k] = b[n - k];
  return det_bareiss(std::move(s), one);
}

/// Common projective zero of binary forms (all of the given degree per form).
template <class E>
bool forms_share_zero(const std::vector<std::pair<BiPoly<E>, int>>& forms) {
  bool at_x_axis = true;  // the point (1 : 0)
  Poly<E> g;
  bool any = false;
  for (const auto& [f, deg] : forms) {
    if (f.is_zero()) continue;
    if (!f.coeff(deg, 0).is_zero()) at_x_axis = false;
    std::vector<E> c(static_cast<std::size_t>(deg + 1), f.terms().begin()->second * E{});
    for (const auto& [k, v] : f.terms()) c[static_cast<std::size_t>(k.first)] = v;
    Poly<E> p(std::move(c));
    g = any ? gcd(g, p) : p.monic();
    any = true;
  }
  if (!any) return true;
  return at_x_axis || g.degree() > 0;
}

}  // namespace detail

/// Whether the projective closure of g = 0 (total degree 3) is smooth over
/// the algebraic closure. Empty when a candidate singular point needs a
/// residue extension of degree above 2.
template <class E>
std::optional<bool> cubic_is_smooth(const BiPoly<E>& g) {
  if (g.degree() != 3) throw std::logic_error("cubic_is_smooth: total degree must be 3");
  const E one = g.terms().begin()->second.make(1);
  const E three = one.make(3);

  // Line at infinity: G, G_X, G_Y reduce to g3 and its partials, G_Z to g2.
  const BiPoly<E> g3 = g.part(3);
  if (detail::forms_share_zero<E>({{g3, 3}, {g3.dx(), 2}, {g3.dy(), 2}, {g.part(2), 2}})) return false;

  // Affine chart, after a shear that gives some member a monic-in-y leading term.
  for (int k = 0; k < 8; ++k) {
    const BiPoly<E> h = g.shear(one.make(k));
    const BiPoly<E> hx = h.dx(), hy = h.dy();
    const BiPoly<E> x = BiPoly<E>::monomial(one, 1, 0), y = BiPoly<E>::monomial(one, 0, 1);
    const BiPoly<E> hz = three * h - x * hx - y * hy;
    std::vector<BiPoly<E>> sys{hx, hy, hz, h};

    int lead = -1;
    for (std::size_t i = 0; i < sys.size(); ++i) {
      const int d = sys[i].degree();
      if (d < 0 || sys[i].coeff(0, d).is_zero()) continue;
      if (lead < 0 || d < sys[static_cast<std::size_t>(lead)].degree()) lead = static_cast<int>(i);
    }
    if (lead < 0) continue;
    const BiPoly<E>& f1 = sys[static_cast<std::size_t>(lead)];
    if (f1.degree() == 0) return true;

    Poly<E> res;
    bool have = false, vacuous = false, others = false;
    for (std::size_t i = 0; i < sys.size(); ++i) {
      if (static_cast<int>(i) == lead || sys[i].is_zero()) continue;
      others = true;
      const Poly<E> r = detail::resultant_y(f1, sys[i], one);
      if (r.is_zero()) {
        vacuous = true;
        continue;
      }
      res = have ? gcd(res, r) : r.monic();
      have = true;
    }
    if (!others) return false;
    if (!have) return vacuous ? std::nullopt : std::optional<bool>(true);
    if (res.degree() <= 0) return true;

    using Q = Quad<E>;
    const auto fac = factor(res);
    for (const auto& fc : fac.factors) {
      if (!fc.certified || fc.poly.degree() > 2) return std::nullopt;
      const Poly<E> q = fc.poly.monic();
      Q theta;
      if (q.degree() == 1) {
        theta = Q(-q.coeff(0));
      } else {
        const E b = q.coeff(1), c = q.coeff(0);
        const E half = one.make(2).inverse();
        theta = Q(-b * half, half, b * b - one.make(4) * c);
      }
      Poly<Q> common;
      bool started = false;
      for (const auto& s : sys) {
        if (s.is_zero()) continue;
        std::vector<Q> ys;
        for (const auto& cx : s.in_y()) ys.push_back(cx.template eval<Q>(theta));
        Poly<Q> p(std::move(ys));
        if (p.is_zero()) continue;
        common = started ? gcd(common, p) : p.monic();
        started = true;
      }
      if (!started || common.degree() > 0) return false;
    }
    return true;
  }
  return std::nullopt;
}

/// Coefficient vectors v with sum v_i f_i = 0.
template <class F>
Matrix<typename F::Elem> linear_relations(const std::vector<Element<F>>& fs) {
  using E = typename F::Elem;
  const auto& c = fs.front().curve();
  Poly<E> den = Poly<E>::constant(c->one());
  std::vector<std::pair<Numerator<E>, Poly<E>>> forms;
  for (const auto& f : fs) {
    forms.push_back(f.numerator_form());
    den = lcm(den, forms.back().second);
  }
  std::vector<Numerator<E>> nums;
  for (const auto& [n, d] : forms) {
    const Poly<E> k = exact_div(den, d);
    nums.push_back({n.A * k, n.B * k});
  }
  const auto [maxA, maxB] = Subspace<F>::degree_bounds(nums);
  const auto cols = Subspace<F>::columns(*c, maxA, maxB);
  const auto rows = Subspace<F>::coordinates(cols, nums, c->zero());
  Matrix<E> t(cols.size(), std::vector<E>(fs.size(), c->zero()));
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t k = 0; k < cols.size(); ++k) t[k][i] = rows[i][k];
  return kernel(std::move(t), fs.size(), c->one());
}

enum class RelationKind { Quadratic, Cubic };

inline std::string to_string(RelationKind k) { return k == RelationKind::Quadratic ? "quadratic" : "cubic"; }

template <class F>
struct RelationResult {
  using E = typename F::Elem;
  RelationKind kind = RelationKind::Quadratic;
  Element<F> x, y;  ///< e_2, e_3 of the normalized filtered basis
  int dim_s2s3 = 0;
  BiPoly<E> quadratic;
  BiPoly<E> L1, Q1, L2, Q2;  ///< e_4 L_i(x, y) = Q_i(x, y)
  BiPoly<E> cubic;           ///< L1 Q2 - L2 Q1
  std::optional<bool> smooth;

  const BiPoly<E>& relation() const { return kind == RelationKind::Quadratic ? quadratic : cubic; }

  /// Genus of the function field generated by x and y, when decided.
  std::optional<int> genus() const {
    if (kind == RelationKind::Quadratic) return 0;
    if (!smooth) return std::nullopt;
    return *smooth ? 1 : 0;
  }
};

template <class F>
Element<F> evaluate(const BiPoly<typename F::Elem>& p, const Element<F>& x, const Element<F>& y) {
  const auto& c = x.curve();
  return p.eval(x, y, Element<F>::from_int(c, 0), [&](const typename F::Elem& v) { return Element<F>::constant(c, v); });
}

template <class F>
RelationResult<F> find_relation(const Subspace<F>& s, const Place<typename F::Elem>& p) {
  using E = typename F::Elem;
  if (s.dim() < 4) throw InputError("find_relation needs dim S >= 4");
  if (combinatorial_genus(s) > 1) throw InputError("find_relation needs combinatorial genus at most 1");
  const auto fb = filtered_basis(normalize_at(s, p), p);
  const auto& c = s.curve();
  const E one = c->one();
  const Element<F> unit = Element<F>::from_int(c, 1);
  const Element<F>& x = fb.elements[1];
  const Element<F>& y = fb.elements[2];
  const Element<F>& e4 = fb.elements[3];

  RelationResult<F> r;
  r.x = x;
  r.y = y;
  using B = BiPoly<E>;
  auto mono = [&](int i, int j) { return B::monomial(one, i, j); };
  auto combine = [&](const std::vector<E>& v, const std::vector<B>& m, std::size_t from, std::size_t to) {
    B out;
    for (std::size_t k = from; k < to; ++k) out = out + v[k] * m[k];
    return out;
  };

  const std::vector<Element<F>> s2s3{unit, x, y, x * x, x * y};
  r.dim_s2s3 = Subspace<F>::span(s2s3).dim();
  if (r.dim_s2s3 == 4) {
    const auto ker = linear_relations(s2s3);
    const std::vector<B> m{mono(0, 0), mono(1, 0), mono(0, 1), mono(2, 0), mono(1, 1)};
    r.kind = RelationKind::Quadratic;
    r.quadratic = combine(ker.front(), m, 0, m.size()).normalized();
  } else if (r.dim_s2s3 == 5) {
    const std::vector<Element<F>> gens{unit, x, y, x * x, x * y, y * y, e4, x * e4, y * e4};
    const std::vector<B> m{mono(0, 0), mono(1, 0), mono(0, 1), mono(2, 0), mono(1, 1),
                           mono(0, 2), mono(0, 0), mono(1, 0), mono(0, 1)};
    const auto ker = linear_relations(gens);
    if (ker.size() < 2)
      throw TheoremViolation("find_relation: S3S4 has " + std::to_string(ker.size()) + " relations, expected 2");
    r.kind = RelationKind::Cubic;
    bool found = false;
    for (std::size_t a = 0; a < ker.size() && !found; ++a)
      for (std::size_t b = a + 1; b < ker.size() && !found; ++b) {
        const B L1 = combine(ker[a], m, 6, 9), Q1 = -combine(ker[a], m, 0, 6);
        const B L2 = combine(ker[b], m, 6, 9), Q2 = -combine(ker[b], m, 0, 6);
        const B G = L1 * Q2 - L2 * Q1;
        if (G.degree() != 3) continue;
        r.L1 = L1, r.Q1 = Q1, r.L2 = L2, r.Q2 = Q2;
        r.cubic = G.normalized();
        found = true;
      }
    if (!found) throw TheoremViolation("find_relation: no cubic of degree exactly 3");
    r.smooth = cubic_is_smooth(r.cubic);
  } else {
    throw InputError("find_relation: dim S2S3 = " + std::to_string(r.dim_s2s3));
  }
  if (!evaluate(r.relation(), x, y).is_zero())
    throw TheoremViolation("find_relation: relation " + r.relation().to_string() + " does not vanish");
  return r;
}

}  // namespace ffspace
