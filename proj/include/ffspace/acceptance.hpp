#pragma once

/**
 * @file acceptance.hpp
 * @brief The acceptance suite: twelve numbered criteria, each reported as a
 *        single pass/fail line. Shared by the test binary and `verify`.
 */

#include <bitset>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ffspace/additive.hpp"
#include "ffspace/classify.hpp"
#include "ffspace/expr.hpp"
#include "ffspace/generate.hpp"

namespace ffspace {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct AcceptanceOptions {
  std::uint64_t seed = 42;
  bool quick = false;  ///< halves every random-instance count
};

namespace acceptance {

using PF = PrimeField;
using QF = RationalField;

template <class F>
Subspace<F> span_of(const CurvePtr<F>& c, const std::vector<std::string>& els) {
  std::vector<Element<F>> g;
  for (const auto& e : els) g.push_back(parse_element(c, e));
  return Subspace<F>::span(g);
}

inline std::vector<std::string> monomials(const std::vector<int>& exps) {
  std::vector<std::string> out;
  for (int e : exps) out.push_back(e == 0 ? "1" : "x^" + std::to_string(e));
  return out;
}

template <class F>
Place<typename F::Elem> at(const CurvePtr<F>& c, const std::string& id) {
  return place_by_id(*c, id);
}

/// Collects failures; a criterion passes when none were recorded.
struct Check {
  int failures = 0;
  int checks = 0;
  std::string first;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first = what;
  }
  CriterionResult result(int id, const std::string& name, const std::string& summary) const {
    CriterionResult r{id, name, failures == 0, summary};
    if (failures) r.detail = std::to_string(failures) + " of " + std::to_string(checks) + " checks failed; first: " + first;
    return r;
  }
};

inline CriterionResult geometric_progressions() {
  Check ck;
  auto run = [&](const auto& K, const char* name) {
    const auto line = parse_curve(K, "rational");
    for (int k = 3; k <= 10; ++k) {
      std::vector<int> e;
      for (int i = 0; i < k; ++i) e.push_back(i);
      const auto S = span_of(line, monomials(e));
      const int d = product(S, S).dim();
      ck.expect(d == 2 * k - 1, std::string(name) + " k=" + std::to_string(k) + ": dim S^2 = " + std::to_string(d));
    }
  };
  run(PF{}, "Fp");
  run(QF{}, "Q");
  return ck.result(1, "geometric progressions: dim S^2 = 2k - 1 for k = 3..10 over F_10007 and Q", "16 spaces");
}

inline CriterionResult hole_progressions() {
  Check ck;
  const auto line = parse_curve(PF{}, "rational");
  for (int k = 4; k <= 10; ++k) {
    std::vector<int> e{0};
    for (int i = 2; i <= k; ++i) e.push_back(i);
    const int g = combinatorial_genus(span_of(line, monomials(e)));
    ck.expect(g == 1, "k=" + std::to_string(k) + ": gamma = " + std::to_string(g));
  }
  return ck.result(2, "hole progressions: gamma(1, x^2, ..., x^k) = 1 for k = 4..10", "7 spaces");
}

inline CriterionResult elliptic_example() {
  Check ck;
  const auto ell = parse_curve(PF{}, "y^2 = x^3 - x");
  const auto S = span_of(ell, {"1", "x", "y", "x^2", "x*y"});
  const int d = product(S, S).dim();
  ck.expect(d == 10, "dim S^2 = " + std::to_string(d));
  return ck.result(3, "elliptic example: dim <1, x, y, x^2, xy>^2 = 10 on y^2 = x^3 - x", "dim S^2 = " + std::to_string(d));
}

inline CriterionResult valuation_counterexample() {
  Check ck;
  const auto line = parse_curve(PF{}, "rational");
  const auto H = span_of(line, {"1", "x", "x^2", "x^3 + 1/x"});
  const auto inf = at(line, "Pinf");
  const auto vH = valuation_set(H, inf);
  ck.expect(vH == std::set<int>{0, -1, -2, -3}, "v(H) differs from {0,-1,-2,-3}");
  const auto H2 = product(H, H);
  const auto listed = span_of(line, {"1/x", "1", "x", "x^2", "x^3", "x^4", "x^5", "x^6 + 1/x^2"});
  ck.expect(H2 == listed, "H^2 differs from <1/x, 1, x, ..., x^5, x^6 + 1/x^2>");
  ck.expect(H2.dim() == 8, "dim H^2 = " + std::to_string(H2.dim()));
  const auto vH2 = valuation_set(H2, inf);
  std::set<int> sums;
  for (int a : vH)
    for (int b : vH) sums.insert(a + b);
  ck.expect(vH2.count(1) == 1 && sums.count(1) == 0, "1 is not in v(H^2) \\ (v(H) + v(H))");
  return ck.result(4, "valuation counterexample: v(H) = {0,-1,-2,-3}, H^2 = <1/x, 1, ..., x^5, x^6 + 1/x^2>, 1 in v(H^2) \\ 2v(H)",
                   "dim H^2 = " + std::to_string(H2.dim()));
}

inline CriterionResult gamma_two() {
  Check ck;
  const auto line = parse_curve(PF{}, "rational");
  const int g = combinatorial_genus(span_of(line, {"1", "x", "x^3", "x^4"}));
  ck.expect(g == 2, "gamma = " + std::to_string(g));
  return ck.result(5, "gamma(1, x, x^3, x^4) = 2", "gamma = " + std::to_string(g));
}

inline CriterionResult riemann_roch_dims() {
  Check ck;
  const auto ell = parse_curve(PF{}, "y^2 = x^3 - x");
  const auto O = at(ell, "O");
  for (int n = 1; n <= 12; ++n) {
    const auto L = rr_space(ell, Divisor<PF>::single(ell, O, n));
    ck.expect(L.dim() == n, "dim L(" + std::to_string(n) + "O) = " + std::to_string(L.dim()));
    if (!L.space) continue;
    std::set<int> want{0};
    for (int k = 2; k <= n; ++k) want.insert(-k);
    ck.expect(valuation_set(*L.space, O) == want, "valuation set of L(" + std::to_string(n) + "O)");
  }
  return ck.result(6, "Riemann-Roch on y^2 = x^3 - x: dim L(nO) = n and v(L(nO)) = {0, -2, ..., -n}, n = 1..12", "12 divisors");
}

inline CriterionResult mumford() {
  Check ck;
  auto run = [&](const auto& c, const std::string& id) {
    const auto P = at(c, id);
    using F = typename std::decay_t<decltype(*c)>::Field;
    for (int m = 2; m <= 6; ++m)
      for (int n = 3; n <= 6; ++n) {
        const auto r = mumford_check(c, Divisor<F>::single(c, P, m), Divisor<F>::single(c, P, n));
        ck.expect(r.hypotheses_met && r.equal, c->to_string() + ": L(" + std::to_string(m) + id + ") L(" + std::to_string(n) +
                                                   id + ") != L(" + std::to_string(m + n) + id + ")");
      }
  };
  run(parse_curve(PF{}, "y^2 = x^3 - x"), "O");
  run(parse_curve(PF{}, "rational"), "Pinf");
  return ck.result(7, "Mumford: L(mO) L(nO) = L((m+n)O), m = 2..6, n = 3..6, genus 1 and genus 0", "40 products");
}

inline CriterionResult theorem_main(const AcceptanceOptions& o) {
  Check ck;
  const int count = o.quick ? 50 : 100;
  const PF K;
  const std::vector<CurvePtr<PF>> g1{parse_curve(K, "y^2 = x^3 - x"), parse_curve(K, "y^2 = x^3 + 3*x + 5"),
                                     parse_curve(K, "y^2 = x^4 + 3*x + 1")};
  const std::vector<CurvePtr<PF>> g0{parse_curve(K, "rational"), parse_curve(K, "rational"), parse_curve(K, "y^2 = -x^2 - 1")};
  auto verify = [&](const Generated<PF>& g, int n, int genus, const std::string& tag) {
    try {
      const auto r = classify(Subspace<PF>::span(g.elements));
      const int want_codim = genus == 1 ? 0 : 1;
      const bool ok = r.gamma == 1 && r.genus_detected == genus && r.D_S.degree() == n && r.codim_in_LD == want_codim &&
                      r.p_index && (*r.p_index == 2 || *r.p_index == n - 1);
      ck.expect(ok, tag + ": " + form_name<PF>(r.form) + ", gamma " + std::to_string(r.gamma) + ", deg D_S " +
                        std::to_string(r.D_S.degree()) + ", codim " + std::to_string(r.codim_in_LD));
    } catch (const std::exception& e) {
      ck.expect(false, tag + ": " + e.what());
    }
  };
  for (int i = 0; i < count; ++i) {
    const int n = 5 + i % 4;
    const auto seed = o.seed * 1000003ULL + static_cast<std::uint64_t>(i);
    verify(generate_random(GenKind::RR, g1[static_cast<std::size_t>(i) % 3], n, seed), n, 1, "genus 1 #" + std::to_string(i));
  }
  for (int i = 0; i < count; ++i) {
    const int n = 4 + i % 5;
    const auto seed = o.seed * 1000033ULL + static_cast<std::uint64_t>(i);
    verify(generate_random(GenKind::Codim1, g0[static_cast<std::size_t>(i) % 3], n, seed), n, 0, "genus 0 #" + std::to_string(i));
  }
  return ck.result(8, "gamma = 1 structure: genus, deg D_S = n, codim, P-index in {2, n-1} on random instances over F_10007",
                   std::to_string(2 * count) + " instances");
}

inline CriterionResult canonical_forms(const AcceptanceOptions& o) {
  Check ck;
  const int per_type = o.quick ? 50 : 100;
  const PF K;
  const std::vector<CurvePtr<PF>> g0{parse_curve(K, "rational"), parse_curve(K, "y^2 = -x^2 - 1")};
  int seen[2] = {0, 0};
  for (std::uint64_t i = 0; (seen[0] < per_type || seen[1] < per_type) && i < 20ULL * static_cast<std::uint64_t>(per_type); ++i) {
    const auto g = generate_random(GenKind::Codim1, g0[i % 2], 4 + static_cast<int>(i % 5), o.seed * 7919ULL + i);
    const int ty = *g.truth.type == "II" ? 1 : 0;
    if (seen[ty] >= per_type) continue;
    ++seen[ty];
    try {
      const auto S = Subspace<PF>::span(g.elements);
      const auto r = classify(S);
      const bool typed = std::holds_alternative<Genus0TypeI<PF>>(r.form) || std::holds_alternative<Genus0TypeII<PF>>(r.form);
      const auto back = reconstruct(r);
      ck.expect(typed && back && *back == S, "instance " + std::to_string(i) + " (" + form_name<PF>(r.form) + ") does not round-trip");
    } catch (const std::exception& e) {
      ck.expect(false, "instance " + std::to_string(i) + ": " + e.what());
    }
  }
  ck.expect(seen[0] == per_type && seen[1] == per_type, "not enough instances of each type");

  const auto line = parse_curve(K, "rational");
  const auto r = classify(span_of(line, {"1", "x^2", "x^3", "x^4"}));
  const auto* t2 = std::get_if<Genus0TypeII<PF>>(&r.form);
  ck.expect(t2 && t2->alpha.is_zero() && t2->t == Element<PF>::x(line), "<1, x^2, x^3, x^4> is not type II with t = x, alpha = 0");
  return ck.result(9, "genus-0 canonical forms: type I and II instances round-trip; <1, x^2, x^3, x^4> is type II with alpha = 0",
                   std::to_string(seen[0]) + " type I + " + std::to_string(seen[1]) + " type II");
}

inline CriterionResult conic_over_q() {
  Check ck;
  const auto conic = parse_curve(QF{}, "y^2 = -x^2 - 1");
  const auto S = span_of(conic, {"1", "x", "y"});
  const auto r = classify(S);
  ck.expect(r.gamma == 0, "gamma = " + std::to_string(r.gamma));
  const auto& terms = r.D_S.terms();
  ck.expect(terms.size() == 1 && terms.begin()->second.coeff == 1 && terms.begin()->second.place.degree == 2,
            "D_S = " + r.D_S.to_string() + " is not a single place of degree 2");
  const auto L = rr_space(conic, r.D_S);
  ck.expect(L.space && *L.space == r.normalized && r.codim_in_LD == 0, "S != L(D_S)");
  ck.expect(!rational_place(*conic).has_value(), "a place of degree 1 was found");
  ck.expect(std::holds_alternative<CodimOneUnnormalized<QF>>(r.form), "reported " + form_name<QF>(r.form));
  return ck.result(10, "conic y^2 = -x^2 - 1 over Q: <1, x, y> has gamma 0, D_S one place of degree 2, S = L(D_S), no geometric progression in K",
                   "D_S = " + r.D_S.to_string());
}

inline CriterionResult additive(const AcceptanceOptions& o) {
  Check ck;
  // Brute-force oracle on bitsets.
  int exhaustive = 0, doubling = 0;
  for (unsigned mask = 0; mask < (1u << 12); ++mask) {
    IntSet A{0};
    for (int k = 1; k <= 12; ++k)
      if (mask & (1u << (k - 1))) A.push_back(k);
    if (A.size() < 4) continue;
    ++exhaustive;
    std::bitset<25> sums;
    for (auto a : A)
      for (auto b : A) sums.set(static_cast<std::size_t>(a + b));
    const bool tight = sums.count() == 2 * A.size();
    doubling += tight;
    const auto h = structure_2k(A);
    ck.expect(h.has_value() == tight, "structure_2k disagrees with |A+A| = 2|A|");
    if (h) ck.expect(h->rebuild() == A, "reconstruction differs");
  }
  const int count = o.quick ? 500 : 1000;
  std::mt19937_64 rng(o.seed);
  for (int d = 1; d <= 3; ++d)
    for (int i = 0; i < count; ++i) {
      std::vector<IntVec> A;
      do {
        A.clear();
        const int size = std::uniform_int_distribution<int>(d + 1, 12)(rng);
        for (int k = 0; k < size; ++k) {
          IntVec v;
          for (int c = 0; c < d; ++c) v.push_back(std::uniform_int_distribution<int>(-6, 6)(rng));
          A.push_back(v);
        }
      } while (affine_rank(A) != d);
      ck.expect(freiman_lemma_holds(A, d), "Freiman bound failed for d = " + std::to_string(d));
    }
  return ck.result(11, "additive: structure_2k exhaustive on subsets of {0..12}; Freiman's lemma on random rank-d sets, d = 1..3",
                   std::to_string(exhaustive) + " sets, " + std::to_string(doubling) + " with |A+A| = 2|A|, " +
                       std::to_string(3 * count) + " Freiman sets");
}

/// A random element whose zeros and poles lie on places of degree <= 2:
/// powers of linear polynomials in x (and quadratics on the line), times a
/// chord through two affine points when the curve is a cubic.
template <class F>
Element<F> split_element(const CurvePtr<F>& c, std::mt19937_64& rng) {
  using E = typename F::Elem;
  const auto& K = c->field();
  const auto x = Element<F>::x(c);
  auto rnd = [&] { return Element<F>::constant(c, K.random(rng)); };
  Element<F> f = Element<F>::constant(c, K.random_nonzero(rng));
  const int factors = std::uniform_int_distribution<int>(1, 4)(rng);
  for (int k = 0; k < factors; ++k) {
    const int e = std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1;
    const auto lin = x - rnd();
    // an irreducible quadratic can lie under an inert place of degree 4 on a cubic
    const bool quad = c->is_rational() && std::uniform_int_distribution<int>(0, 1)(rng);
    const auto g = quad ? lin * lin + rnd() * x + rnd() : lin;
    if (!g.is_zero()) f = f * g.pow(e);
  }
  if (c->is_rational() || c->D().degree() != 3) return f;
  std::vector<std::pair<E, E>> pts;
  for (int attempt = 0; attempt < 200 && pts.size() < 2; ++attempt) {
    const E a = K.random(rng);
    if (!pts.empty() && pts[0].first == a) continue;
    if (const auto b = c->D()(a).sqrt()) pts.emplace_back(a, *b);
  }
  if (pts.size() < 2) return f;
  const auto [x1, y1] = pts[0];
  const auto [x2, y2] = pts[1];
  const E slope = (y2 - y1) / (x2 - x1);
  const auto chord = Element<F>::y(c) - Element<F>::constant(c, slope) * (x - Element<F>::constant(c, x1)) -
                     Element<F>::constant(c, y1);
  return f * (std::uniform_int_distribution<int>(0, 1)(rng) ? chord : chord.pow(-1));
}

inline CriterionResult properties(const AcceptanceOptions& o) {
  Check ck;
  const int count = o.quick ? 100 : 200;
  const PF K;
  const std::vector<CurvePtr<PF>> curves{parse_curve(K, "rational"), parse_curve(K, "y^2 = x^3 - x"),
                                         parse_curve(K, "y^2 = x^3 + 3*x + 5")};
  std::mt19937_64 rng(o.seed ^ 0x9e3779b97f4a7c15ULL);
  for (int i = 0; i < count; ++i) {
    const auto& c = curves[static_cast<std::size_t>(i) % curves.size()];
    const std::string tag = "#" + std::to_string(i) + " ";
    try {
      const int n = std::uniform_int_distribution<int>(2, 5)(rng);
      const auto U = Subspace<PF>::span(generate_free(c, n, rng).elements);
      const auto V = Subspace<PF>::span(generate_free(c, std::uniform_int_distribution<int>(1, 3)(rng), rng).elements);
      const auto P = random_rational_place(c, rng);
      auto Q = random_rational_place(c, rng);
      for (int k = 0; k < 8 && Q == P; ++k) Q = random_rational_place(c, rng);

      const auto vU = valuation_set(U, P);
      ck.expect(static_cast<int>(vU.size()) == U.dim(), tag + "|v_P(S)| != dim S");
      const auto U2 = product(U, U);
      const auto vU2 = valuation_set(U2, P);
      bool inside = true;
      for (int a : vU)
        for (int b : vU) inside = inside && vU2.count(a + b);
      ck.expect(inside, tag + "v(S) + v(S) not inside v(S^2)");
      const auto UV = product(U, V);
      ck.expect(min_valuation(UV, P) == min_valuation(U, P) + min_valuation(V, P), tag + "min v(UV) != min v(U) + min v(V)");
      ck.expect(U2.dim() >= 2 * U.dim() - 1, tag + "dim S^2 < 2 dim S - 1");
      const auto lat = lattice(U, P);
      ck.expect(lat.weights_positive && lat.paths_consistent, tag + "lattice weights or path sums");
      ck.expect(lat.codim1_holds, tag + "S_i S_{j+1} != S_{i+1} S_j on a square with unit weights");
      if (!(Q == P)) {
        const bool lhs = separates(UV, P, Q);
        const bool rhs = separates(U, P, Q) || separates(V, P, Q);
        ck.expect(lhs == rhs, tag + "separation of UV differs from separation of U or V");
      }
      const auto f = acceptance::split_element(c, rng);
      ck.expect(principal_divisor(f).degree() == 0, tag + "deg (" + f.to_string() + ") != 0");
    } catch (const std::exception& e) {
      ck.expect(false, tag + e.what());
    }
  }
  return ck.result(12, "properties on random subspaces over F_10007: valuations, products, lattice, separation, principal divisors",
                   std::to_string(count) + " subspaces");
}

}  // namespace acceptance

/// Runs the criteria in order; `on_result` sees each one as it finishes.
inline std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& o,
                                                   const std::function<void(const CriterionResult&)>& on_result = {}) {
  using namespace acceptance;
  std::vector<std::function<CriterionResult()>> suite{
      geometric_progressions, hole_progressions, elliptic_example, valuation_counterexample, gamma_two, riemann_roch_dims,
      mumford, [&] { return theorem_main(o); }, [&] { return canonical_forms(o); }, conic_over_q, [&] { return additive(o); },
      [&] { return properties(o); }};
  std::vector<CriterionResult> out;
  for (std::size_t k = 0; k < suite.size(); ++k) {
    CriterionResult r;
    try {
      r = suite[k]();
    } catch (const std::exception& e) {
      r = {static_cast<int>(k + 1), "criterion " + std::to_string(k + 1), false, std::string("exception: ") + e.what()};
    }
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

inline std::string format_line(const CriterionResult& r) {
  std::ostringstream s;
  s << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.name;
  if (!r.detail.empty()) s << " (" << r.detail << ")";
  return s.str();
}

}  // namespace ffspace
