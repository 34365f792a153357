#pragma once

/**
 * @file classify.hpp
 * @brief Classification of subspaces of combinatorial genus 0 and 1:
 *        geometric progressions, Riemann-Roch spaces, and the two genus-0
 *        canonical forms.
 *
 * Results describe the input S as scale * T, where T contains 1 and is the
 * space the structural data (D_S, codimension, canonical basis) refer to.
 */

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ffspace/lattice.hpp"
#include "ffspace/relation.hpp"
#include "ffspace/riemann_roch.hpp"

namespace ffspace {

template <class F>
struct GeomProgression {
  Element<F> a, x;  ///< S = a * span(1, x, ..., x^{n-1})
};
template <class F>
struct Genus1RR {
  Divisor<F> D;
};
template <class F>
struct Genus0TypeI {
  Element<F> t;
  typename F::Elem alpha;
};
template <class F>
struct Genus0TypeII {
  Element<F> t;
  typename F::Elem alpha;
};
template <class F>
struct CodimOneUnnormalized {
  Divisor<F> D;
};
struct Unclassified {
  std::string reason;
};

template <class F>
using ClassificationForm = std::variant<GeomProgression<F>, Genus1RR<F>, Genus0TypeI<F>, Genus0TypeII<F>,
                                        CodimOneUnnormalized<F>, Unclassified>;

template <class F>
std::string form_name(const ClassificationForm<F>& f) {
  static const char* names[] = {"GeomProgression", "Genus1RR", "Genus0TypeI", "Genus0TypeII", "CodimOneUnnormalized",
                                "Unclassified"};
  return names[f.index()];
}

template <class F>
struct ClassificationResult {
  int n = 0;
  int gamma = 0;
  std::optional<int> genus_detected;
  Divisor<F> D_S;  ///< of the normalized space
  int codim_in_LD = 0;
  std::optional<std::string> place;  ///< degree-1 place used for the filtration
  std::optional<int> p_index;
  std::optional<RelationKind> relation;
  std::optional<bool> conjecture_bound;  ///< dim L(D_S) <= n + gamma - g, gamma >= 2 only
  Element<F> scale;                      ///< S = scale * normalized
  Subspace<F> normalized;
  ClassificationForm<F> form = Unclassified{"not classified"};
  std::vector<std::string> notes;
};

namespace detail {

/// Number of distinct real roots (Sturm).
inline int real_root_count(const Poly<Rational>& f) {
  if (f.degree() <= 0) return 0;
  std::vector<Poly<Rational>> seq{f, f.derivative()};
  while (!seq.back().is_zero() && seq.back().degree() > 0) {
    auto r = seq[seq.size() - 2] % seq.back();
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  auto changes = [&](bool plus_inf) {
    int count = 0, last = 0;
    for (const auto& p : seq) {
      if (p.is_zero()) continue;
      int s = p.lead().sign();
      if (!plus_inf && p.degree() % 2 == 1) s = -s;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  };
  return changes(false) - changes(true);
}

inline bool no_real_points(const Curve<RationalField>& c) {
  if (c.is_rational() || c.d() % 2 == 1) return false;
  return c.D().lead().sign() < 0 && real_root_count(c.D()) == 0;
}
inline bool no_real_points(const Curve<PrimeField>&) {
  return false;
}

}  // namespace detail

/// A place of degree 1: the first one at infinity, else the first above
/// x = 0, 1, -1, 2, -2, ... (bounded search over Q).
template <class F>
std::optional<Place<typename F::Elem>> rational_place(const Curve<F>& c) {
  using E = typename F::Elem;
  for (const auto& p : places_at_infinity(c))
    if (p.degree == 1) return p;
  if (detail::no_real_points(c)) return std::nullopt;
  const E one = c.one();
  auto try_at = [&](std::int64_t a) -> std::optional<Place<E>> {
    const Poly<E> lin = Poly<E>::x(one) - Poly<E>::constant(c.field().from_int(a));
    for (const auto& p : places_above(c, lin))
      if (p.degree == 1) return p;
    return std::nullopt;
  };
  if (!c.is_rational())
    for (const auto& r : roots(c.D())) {
      const Poly<E> lin = Poly<E>::x(one) - Poly<E>::constant(r);
      for (const auto& p : places_above(c, lin))
        if (p.degree == 1) return p;
    }
  const std::int64_t bound = c.field().is_finite() ? static_cast<std::int64_t>(c.field().characteristic()) : 64;
  for (std::int64_t k = 0; k < bound; ++k) {
    if (auto p = try_at(k)) return p;
    if (k > 0)
      if (auto p = try_at(-k)) return p;
  }
  return std::nullopt;
}

/// Coordinates of f in 1, t, ..., t^n; empty when f is not a polynomial in t
/// of degree at most n.
template <class F>
std::optional<std::vector<typename F::Elem>> coordinates_in_powers(const Element<F>& f, const std::vector<Element<F>>& powers) {
  std::vector<Element<F>> g = powers;
  g.push_back(f);
  const auto ker = linear_relations(g);
  for (const auto& v : ker) {
    if (v.back().is_zero()) continue;
    const auto k = -v.back().inverse();
    std::vector<typename F::Elem> out;
    for (std::size_t i = 0; i < powers.size(); ++i) out.push_back(k * v[i]);
    return out;
  }
  return std::nullopt;
}

/// A non-constant element spanning L(P) together with 1 (genus 0 only).
template <class F>
Element<F> coordinate_at(const CurvePtr<F>& c, const Place<typename F::Elem>& p) {
  const auto r = rr_space(c, Divisor<F>::single(c, p));
  if (r.dim() != 2) throw InputError("L(" + p.id + ") has dimension " + std::to_string(r.dim()) + ", not 2: genus is not 0");
  for (const auto& e : r.space->basis())
    if (!e.is_constant()) return e;
  throw TheoremViolation("L(" + p.id + ") has no non-constant element");
}

template <class F>
std::vector<Element<F>> powers_of(const Element<F>& t, int n) {
  std::vector<Element<F>> out{Element<F>::from_int(t.curve(), 1)};
  for (int k = 1; k <= n; ++k) out.push_back(out.back() * t);
  return out;
}

template <class F>
struct GoodPlace {
  using E = typename F::Elem;
  Element<F> s;          ///< s^{-1} S contains 1 and lies in L(n R)
  Element<F> tau;        ///< s^{-1} S consists of polynomials of degree <= n in tau
  Place<E> R;
  bool shortcut = false;  ///< the hyperplane already contained 1
  std::optional<E> root;  ///< a with (t - a)^n in u S, otherwise
  Element<F> t;           ///< the coordinate at the reference place
  Element<F> u;           ///< u S lies in L(n P0)
  Subspace<F> normalized;
};

/// Finds R and s with s^{-1} S in L(n R), for S of genus 0 with deg D_S = n.
/// Throws NoRootError when the required root is not in K.
template <class F>
GoodPlace<F> normalize_good_place(const Subspace<F>& s) {
  using E = typename F::Elem;
  const auto& c = s.curve();
  const int n = s.dim();
  const auto p0 = rational_place(*c);
  if (!p0) throw NoRootError("no place of degree 1 over the base field");
  const auto D = divisor_of(s);
  if (D.degree() != n) throw InputError("deg D_S = " + std::to_string(D.degree()) + " differs from dim S = " + std::to_string(n));

  GoodPlace<F> g;
  g.t = coordinate_at(c, *p0);
  const auto u = linearly_equivalent(c, Divisor<F>::single(c, *p0, n), D);
  if (!u) throw InputError("D_S is not equivalent to " + std::to_string(n) + "*" + p0->id);
  g.u = *u;
  const auto T = s.scaled(g.u);
  const auto pw = powers_of(g.t, n);
  Matrix<E> rows;
  for (const auto& f : T.basis()) {
    auto co = coordinates_in_powers(f, pw);
    if (!co) throw TheoremViolation("u S is not inside L(n P0)");
    rows.push_back(std::move(*co));
  }
  const auto lam = kernel(rows, static_cast<std::size_t>(n + 1), c->one());
  if (lam.size() != 1) throw InputError("S has codimension " + std::to_string(lam.size()) + " in L(D_S), not 1");
  const auto& l = lam.front();

  const E one = c->one();
  if (l[0].is_zero()) {
    g.shortcut = true;
    g.tau = g.t;
    g.s = g.u.inverse();
  } else {
    // Lambda(a) = sum_k l_k * [t^k](t - a)^n
    std::vector<E> lc(static_cast<std::size_t>(n + 1), c->zero());
    E binom = one;
    for (int k = 0; k <= n; ++k) {
      if (k > 0) binom = binom * one.make(n - k + 1) * one.make(k).inverse();
      const int e = n - k;
      const E sign = e % 2 ? -one : one;
      lc[static_cast<std::size_t>(e)] += sign * binom * l[static_cast<std::size_t>(k)];
    }
    const auto rs = roots(Poly<E>(lc));
    if (rs.empty()) throw NoRootError("the normalizing polynomial " + Poly<E>(lc).to_string("a") + " has no root in K");
    g.root = rs.front();
    const auto shifted = g.t - Element<F>::constant(c, *g.root);
    g.tau = shifted.inverse();
    g.s = shifted.pow(n) / g.u;
  }
  const auto div_tau = principal_divisor(g.tau);
  for (const auto& [id, term] : div_tau.terms())
    if (term.coeff < 0) g.R = term.place;
  g.normalized = s.scaled(g.s.inverse());
  return g;
}

template <class F>
struct Genus0Form {
  bool type_two = false;
  Element<F> t;
  typename F::Elem alpha;

  std::vector<Element<F>> basis(int n) const {
    const auto& c = t.curve();
    const auto ta = t + Element<F>::constant(c, alpha);
    std::vector<Element<F>> out{Element<F>::from_int(c, 1)};
    Element<F> tp = Element<F>::from_int(c, 1);
    for (int k = 1; k < n; ++k) {
      tp = tp * t;
      if (type_two || k == n - 1)
        out.push_back(ta * tp);
      else
        out.push_back(tp);
    }
    return out;
  }
};

/// Canonical basis of S with 1 in S inside L(n P), of genus 0 and gamma 1.
template <class F>
Genus0Form<F> canonical_form_g0(const Subspace<F>& s, const Place<typename F::Elem>& p) {
  using E = typename F::Elem;
  const auto& c = s.curve();
  const int n = s.dim();
  if (n < 3) throw InputError("canonical_form_g0 needs dim S >= 3");
  if (!s.contains(Element<F>::from_int(c, 1))) throw InputError("canonical_form_g0 needs 1 in S");
  const Element<F> t0 = coordinate_at(c, p);
  const auto pw = powers_of(t0, n);

  // Columns by descending degree so pivots read off the degree set.
  Matrix<E> m;
  for (const auto& f : s.basis()) {
    auto co = coordinates_in_powers(f, pw);
    if (!co) throw InputError("S is not inside L(" + std::to_string(n) + "*" + p.id + ")");
    std::reverse(co->begin(), co->end());
    m.push_back(std::move(*co));
  }
  const auto piv = rref(m);
  std::vector<int> degs;
  for (auto col : piv) degs.push_back(n - static_cast<int>(col));
  std::sort(degs.begin(), degs.end());
  auto row_of = [&](int deg) -> const std::vector<E>& {
    for (std::size_t i = 0; i < piv.size(); ++i)
      if (n - static_cast<int>(piv[i]) == deg) return m[i];
    throw std::logic_error("no row of that degree");
  };
  auto coef = [&](const std::vector<E>& row, int deg) { return row[static_cast<std::size_t>(n - deg)]; };

  std::vector<int> type1, type2{0};
  for (int k = 0; k <= n - 2; ++k) type1.push_back(k);
  type1.push_back(n);
  for (int k = 2; k <= n; ++k) type2.push_back(k);

  Genus0Form<F> g;
  if (degs == type1) {
    g.t = t0;
    g.alpha = coef(row_of(n), n - 1);
  } else if (degs == type2) {
    g.type_two = true;
    // p2 = t^2 + b t, p3 = t^3 + b3 t (the rref removed the other columns).
    const auto& r2 = row_of(2);
    const auto& r3 = row_of(3);
    Poly<E> p2(std::vector<E>{coef(r2, 0), coef(r2, 1), coef(r2, 2)});
    std::vector<E> c3;
    for (int k = 0; k <= 3; ++k) c3.push_back(coef(r3, k));
    const auto [q, rem] = divmod(Poly<E>(c3), p2);
    (void)q;
    p2 = p2 + Poly<E>::constant(rem.coeff(1));
    E beta;
    if (p2.coeff(0).is_zero()) {
      beta = c->zero();
    } else {
      const auto rs = roots(p2);
      if (rs.empty()) throw NoRootError("p2 = " + p2.to_string("t") + " has no root in K");
      beta = rs.front();
    }
    g.t = t0 - Element<F>::constant(c, beta);
    g.alpha = beta + beta + p2.coeff(1);
  } else {
    std::string d;
    for (int k : degs) d += (d.empty() ? "" : ",") + std::to_string(k);
    throw TheoremViolation("degree set {" + d + "} is neither {0..n-2, n} nor {0, 2..n}");
  }
  if (!(Subspace<F>::span(g.basis(n)) == s)) throw TheoremViolation("canonical basis does not reconstruct S");
  return g;
}

/// The subspace a form describes, before applying the scale; empty for
/// forms that carry no basis.
template <class F>
std::optional<Subspace<F>> reconstruct(const ClassificationResult<F>& r) {
  const auto& c = r.scale.curve();
  if (const auto* g = std::get_if<GeomProgression<F>>(&r.form))
    return Subspace<F>::span(powers_of(g->x, r.n - 1)).scaled(g->a);
  if (const auto* g = std::get_if<Genus1RR<F>>(&r.form)) {
    auto rr = rr_space(c, g->D);
    if (!rr.space) return std::nullopt;
    return rr.space->scaled(r.scale);
  }
  if (const auto* g = std::get_if<Genus0TypeI<F>>(&r.form))
    return Subspace<F>::span(Genus0Form<F>{false, g->t, g->alpha}.basis(r.n)).scaled(r.scale);
  if (const auto* g = std::get_if<Genus0TypeII<F>>(&r.form))
    return Subspace<F>::span(Genus0Form<F>{true, g->t, g->alpha}.basis(r.n)).scaled(r.scale);
  return std::nullopt;
}

template <class F>
ClassificationResult<F> classify(const Subspace<F>& s) {
  const auto& c = s.curve();
  ClassificationResult<F> r;
  r.n = s.dim();
  if (r.n == 0) throw InputError("classify: empty subspace");

  const auto P = rational_place(*c);
  if (P) {
    r.place = P->id;
    r.scale = filtered_basis(s, *P).elements.front();
  } else {
    r.scale = s.basis().front();
    if (detail::no_real_points(*c))
      r.notes.push_back("no place of degree 1: D(x) < 0 for every real x, so the model has no real points");
    else
      r.notes.push_back("no place of degree 1 found");
  }
  r.normalized = s.scaled(r.scale.inverse());
  const auto& S = r.normalized;
  r.gamma = combinatorial_genus(S);

  std::optional<RRResult<F>> L;
  try {
    r.D_S = divisor_of(S);
    L = rr_space(c, r.D_S);
    if (!L->space || !L->space->contains(S)) throw TheoremViolation("S is not inside L(D_S)");
    r.codim_in_LD = L->dim() - r.n;
  } catch (const UnsupportedError& e) {
    r.form = Unclassified{std::string("divisor computation unsupported: ") + e.what()};
    return r;
  }

  if (r.gamma >= 2) {
    r.conjecture_bound = L->dim() <= r.n + r.gamma - c->genus();
    r.form = Unclassified{"gamma out of theorem scope"};
    return r;
  }

  if (r.gamma == 0) {
    if (r.n < 3) {
      r.form = Unclassified{"dim S < 3"};
      return r;
    }
    r.genus_detected = 0;
    if (r.codim_in_LD != 0) throw TheoremViolation("gamma = 0 but S has codimension " + std::to_string(r.codim_in_LD) + " in L(D_S)");
    if (r.D_S.degree() != r.n - 1) throw TheoremViolation("gamma = 0 but deg D_S = " + std::to_string(r.D_S.degree()));
    if (P) {
      const auto x = filtered_basis(S, *P).elements[1];
      if (Subspace<F>::span(powers_of(x, r.n - 1)) == S) {
        r.form = GeomProgression<F>{r.scale, x};
        return r;
      }
      r.notes.push_back("powers of e_2 do not span S");
    } else {
      r.notes.push_back("a geometric progression basis needs a pole of degree 1, hence a place of degree 1");
    }
    r.form = CodimOneUnnormalized<F>{r.D_S};
    return r;
  }

  // gamma = 1
  if (r.n < 4) {
    r.form = Unclassified{"gamma = 1 with dim S = 3 is outside the structure theorem (needs dim S >= 4)"};
    return r;
  }
  if (!P) {
    r.form = Unclassified{"no place of degree 1 for the filtration"};
    return r;
  }
  const auto lat = lattice(S, *P);
  r.p_index = lat.p_index;
  const auto rel = find_relation(S, *P);
  r.relation = rel.kind;
  r.genus_detected = rel.genus();
  if (!r.genus_detected) {
    r.form = Unclassified{"smoothness of the cubic relation is undetermined"};
    return r;
  }
  if (r.D_S.degree() != r.n) throw TheoremViolation("gamma = 1 but deg D_S = " + std::to_string(r.D_S.degree()));
  if (*r.genus_detected == 1) {
    if (r.codim_in_LD != 0) throw TheoremViolation("genus 1 but S is not L(D_S)");
    r.form = Genus1RR<F>{r.D_S};
  } else {
    if (r.codim_in_LD != 1) throw TheoremViolation("genus 0 but codim of S in L(D_S) is " + std::to_string(r.codim_in_LD));
    try {
      const auto gp = normalize_good_place(S);
      const auto g0 = canonical_form_g0(gp.normalized, gp.R);
      r.scale = r.scale * gp.s;
      r.normalized = gp.normalized;
      if (g0.type_two)
        r.form = Genus0TypeII<F>{g0.t, g0.alpha};
      else
        r.form = Genus0TypeI<F>{g0.t, g0.alpha};
    } catch (const NoRootError& e) {
      r.notes.push_back(e.what());
      r.form = CodimOneUnnormalized<F>{r.D_S};
      return r;
    }
  }
  if (const auto back = reconstruct(r); back && !(*back == s))
    throw TheoremViolation("classification does not reconstruct the input");
  return r;
}

}  // namespace ffspace
