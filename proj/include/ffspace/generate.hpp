#pragma once

/**
 * @file generate.hpp
 * @brief Seeded random instances with known ground truth: Riemann-Roch
 *        spaces, genus-0 spaces of combinatorial genus 1, and free spans.
 */

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ffspace/classify.hpp"

namespace ffspace {

enum class GenKind { RR, Codim1, Free };

inline std::string to_string(GenKind k) {
  switch (k) {
    case GenKind::RR: return "rr";
    case GenKind::Codim1: return "codim1";
    case GenKind::Free: return "free";
  }
  return "?";
}

inline GenKind parse_gen_kind(const std::string& s) {
  if (s == "rr") return GenKind::RR;
  if (s == "codim1") return GenKind::Codim1;
  if (s == "free") return GenKind::Free;
  throw InputError("unknown generator kind '" + s + "' (expected rr, codim1 or free)");
}

struct GroundTruth {
  GenKind kind = GenKind::Free;
  int n = 0;  ///< rr: deg D; codim1 and free: dim S
  std::optional<int> genus;
  std::optional<int> gamma;
  std::optional<int> codim;
  std::optional<std::string> divisor;  ///< rr: D
  std::optional<std::string> type;     ///< codim1: "I" or "II"
  std::optional<std::string> alpha;    ///< codim1, relative to the generating t
  int attempts = 1;
};

template <class F>
struct Generated {
  std::vector<Element<F>> elements;
  GroundTruth truth;
};

/// A uniformly chosen place of degree 1 (bounded search over Q).
template <class F>
Place<typename F::Elem> random_rational_place(const CurvePtr<F>& c, std::mt19937_64& rng) {
  using E = typename F::Elem;
  std::vector<Place<E>> inf;
  for (const auto& p : places_at_infinity(*c))
    if (p.degree == 1) inf.push_back(p);
  const E one = c->one();
  for (int attempt = 0; attempt < 400; ++attempt) {
    if (!inf.empty() && std::uniform_int_distribution<int>(0, 7)(rng) == 0)
      return inf[std::uniform_int_distribution<std::size_t>(0, inf.size() - 1)(rng)];
    const E a = c->field().random(rng);
    std::vector<Place<E>> cand;
    for (const auto& p : places_above(*c, Poly<E>::x(one) - Poly<E>::constant(a)))
      if (p.degree == 1) cand.push_back(p);
    if (!cand.empty()) return cand[std::uniform_int_distribution<std::size_t>(0, cand.size() - 1)(rng)];
  }
  if (auto p = rational_place(*c)) return *p;
  throw InputError("no place of degree 1 available for random instances");
}

namespace detail {

/// A small random multiplier (x - a)^e (x - b)^f with e, f in {-1, 0, 1}.
template <class F>
Element<F> random_multiplier(const CurvePtr<F>& c, std::mt19937_64& rng) {
  Element<F> m = Element<F>::constant(c, c->field().random_nonzero(rng));
  const auto x = Element<F>::x(c);
  for (int k = 0; k < 2; ++k) {
    const int e = std::uniform_int_distribution<int>(-1, 1)(rng);
    if (e == 0) continue;
    const auto lin = x - Element<F>::constant(c, c->field().random(rng));
    m = m * lin.pow(e);
  }
  return m;
}

}  // namespace detail

/// S = m * L(D) for a random D of degree n supported on places of degree 1.
template <class F>
Generated<F> generate_rr(const CurvePtr<F>& c, int n, std::mt19937_64& rng) {
  if (n < 1) throw InputError("rr instances need n >= 1");
  Divisor<F> D(c);
  const int extra = std::uniform_int_distribution<int>(0, 2)(rng);
  int sum = 0;
  for (int k = 0; k < extra; ++k) {
    static const int choices[] = {-1, 1, 1, 2};
    const int co = choices[std::uniform_int_distribution<int>(0, 3)(rng)];
    D.add(random_rational_place(c, rng), co);
    sum += co;
  }
  D.add(random_rational_place(c, rng), n - sum);
  const auto L = rr_space(c, D);
  if (!L.space) throw TheoremViolation("rr generator: L(" + D.to_string() + ") = 0");
  const auto m = detail::random_multiplier(c, rng);
  Generated<F> g;
  g.elements = L.space->scaled(m).basis();
  g.truth.kind = GenKind::RR;
  g.truth.n = n;
  g.truth.genus = c->genus();
  g.truth.codim = 0;
  g.truth.divisor = D.to_string();
  if (c->genus() == 0)
    g.truth.gamma = 0;
  else if (n >= 3)
    g.truth.gamma = 1;
  return g;
}

/// A space of combinatorial genus 1 in a genus-0 field, codimension 1 in
/// L(D_S): m * span of a type I or II basis in a random coordinate t.
/// Candidates are re-drawn (at most 100 times) until gamma = 1.
template <class F>
Generated<F> generate_codim1(const CurvePtr<F>& c, int n, std::mt19937_64& rng) {
  using E = typename F::Elem;
  if (n < 4) throw InputError("codim1 instances need n >= 4");
  if (c->genus() != 0) throw InputError("codim1 instances need a genus-0 curve");
  const auto& K = c->field();
  for (int attempt = 1; attempt <= 100; ++attempt) {
    const auto P = random_rational_place(c, rng);
    const auto t0 = coordinate_at(c, P);
    // Moebius change of coordinate keeps t a degree-1 function.
    E a = K.random(rng), b = K.random(rng), cc = K.random(rng), d = K.random(rng);
    if ((a * d - b * cc).is_zero()) continue;
    const auto t = (Element<F>::constant(c, a) * t0 + Element<F>::constant(c, b)) /
                   (Element<F>::constant(c, cc) * t0 + Element<F>::constant(c, d));
    const bool two = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
    const E alpha = std::uniform_int_distribution<int>(0, 3)(rng) == 0 ? K.zero() : K.random(rng);
    const Genus0Form<F> form{two, t, alpha};
    const auto m = detail::random_multiplier(c, rng);
    const auto S = Subspace<F>::span(form.basis(n)).scaled(m);
    if (S.dim() != n || combinatorial_genus(S) != 1) continue;
    Generated<F> g;
    g.elements = S.basis();
    g.truth.kind = GenKind::Codim1;
    g.truth.n = n;
    g.truth.genus = 0;
    g.truth.gamma = 1;
    g.truth.codim = 1;
    g.truth.type = two ? "II" : "I";
    g.truth.alpha = alpha.to_string();
    g.truth.attempts = attempt;
    return g;
  }
  throw InputError("codim1 generator: no gamma = 1 sample in 100 attempts");
}

/// n random elements (A + B y) / den with small degrees.
template <class F>
Generated<F> generate_free(const CurvePtr<F>& c, int n, std::mt19937_64& rng) {
  using E = typename F::Elem;
  if (n < 1) throw InputError("free instances need n >= 1");
  const auto& K = c->field();
  const E one = c->one();
  auto rand_poly = [&](int deg) {
    std::vector<E> v;
    for (int k = 0; k <= deg; ++k) v.push_back(K.random(rng));
    return Poly<E>(std::move(v));
  };
  Generated<F> g;
  for (int attempt = 0; attempt < 100 && static_cast<int>(g.elements.size()) < n; ++attempt) {
    Poly<E> den = Poly<E>::constant(one);
    const int lin = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int k = 0; k < lin; ++k) den = den * (Poly<E>::x(one) - Poly<E>::constant(K.random(rng)));
    Numerator<E> num{rand_poly(std::uniform_int_distribution<int>(0, 3)(rng)), {}};
    if (!c->is_rational() && std::uniform_int_distribution<int>(0, 1)(rng)) num.B = rand_poly(std::uniform_int_distribution<int>(0, 1)(rng));
    const auto f = Element<F>::from_numerator(c, num, den);
    if (f.is_zero()) continue;
    auto trial = g.elements;
    trial.push_back(f);
    if (Subspace<F>::span(trial).dim() == static_cast<int>(trial.size())) g.elements = std::move(trial);
  }
  if (static_cast<int>(g.elements.size()) < n) throw InputError("free generator: could not draw independent elements");
  g.truth.kind = GenKind::Free;
  g.truth.n = n;
  return g;
}

template <class F>
Generated<F> generate_random(GenKind kind, const CurvePtr<F>& c, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  switch (kind) {
    case GenKind::RR: return generate_rr(c, n, rng);
    case GenKind::Codim1: return generate_codim1(c, n, rng);
    case GenKind::Free: return generate_free(c, n, rng);
  }
  throw std::logic_error("generate_random: bad kind");
}

}  // namespace ffspace
