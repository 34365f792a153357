#pragma once

/**
 * @file riemann_roch.hpp
 * @brief Riemann-Roch spaces L(D), Mumford's product identity, and linear
 *        equivalence of divisors.
 *
 * Every f in L(D) can be written N/h with N in K[x] + K[x]y and h the
 * product of the primes under the positive finite part of D, so L(D) is
 * the kernel of a finite system of Laurent-coefficient conditions on a
 * space of monomials of bounded weight.
 */

#include <optional>

#include "ffspace/subspace.hpp"

namespace ffspace {

template <class F>
struct RRResult {
  std::optional<Subspace<F>> space;  ///< empty when L(D) = 0
  Divisor<F> divisor;
  std::optional<int> expected_dim;   ///< deg D + 1 - g when deg D > 2g - 2
  int genus = 0;

  int dim() const { return space ? space->dim() : 0; }
};

template <class F>
RRResult<F> rr_space(const CurvePtr<F>& c, const Divisor<F>& D) {
  using E = typename F::Elem;
  RRResult<F> res;
  res.divisor = D;
  res.genus = c->genus();
  const int deg = D.degree();
  if (deg > 2 * res.genus - 2) res.expected_dim = deg + 1 - res.genus;
  if (deg < 0) {
    res.expected_dim = 0;
    return res;
  }
  if (D.curve() && !(*D.curve() == *c)) throw InputError("divisor belongs to a different curve");

  // h: clears every permitted finite pole.
  const E one = c->one();
  std::map<std::string, std::pair<Poly<E>, int>> prime_exp;
  for (const auto& [id, t] : D.terms()) {
    if (t.place.at_infinity() || t.coeff <= 0) continue;
    const int k = (t.coeff + t.place.ramification - 1) / t.place.ramification;
    auto key = t.place.below.to_string();
    auto it = prime_exp.find(key);
    if (it == prime_exp.end())
      prime_exp.emplace(key, std::make_pair(t.place.below, k));
    else
      it->second.second = std::max(it->second.second, k);
  }
  Poly<E> h = Poly<E>::constant(one);
  for (const auto& [key, pe] : prime_exp) h = h * pow(pe.first, pe.second);

  // Weight bound at infinity.
  int inf_coeff = INT_MIN;
  for (const auto& p : places_at_infinity(*c)) inf_coeff = std::max(inf_coeff, D.coeff(p.id));
  int wmax;
  if (c->is_rational())
    wmax = h.degree() + inf_coeff;
  else if (c->d() % 2 == 1)
    wmax = 2 * h.degree() + inf_coeff;
  else
    wmax = 2 * (h.degree() + inf_coeff);
  if (wmax < 0) return res;

  std::vector<Numerator<E>> mons;
  for (int i = 0; c->weight(i, 0) <= wmax; ++i) mons.push_back({Poly<E>::monomial(one, i), {}});
  if (!c->is_rational())
    for (int i = 0; c->weight(i, 1) <= wmax; ++i) mons.push_back({{}, Poly<E>::monomial(one, i)});

  // Places where conditions are imposed.
  std::vector<Place<E>> places = places_over(*c, h, true);
  for (const auto& [id, t] : D.terms())
    if (std::find(places.begin(), places.end(), t.place) == places.end()) places.push_back(t.place);

  Matrix<E> cond;
  const E zero = c->zero();
  for (const auto& p : places) {
    LocalExpander<F> ex(c, p);
    const int need = ex.valuation(h) - D.coeff(p.id);
    std::vector<typename LocalExpander<F>::Series> ser;
    int low = need;
    for (const auto& m : mons) {
      ser.push_back(ex.expand(m, need));
      low = std::min(low, ser.back().order());
    }
    for (int k = low; k < need; ++k) {
      std::vector<E> re(mons.size(), zero), im(mons.size(), zero);
      bool has_im = false;
      for (std::size_t j = 0; j < mons.size(); ++j) {
        const auto q = ser[j].coeff(k);
        re[j] = q.re();
        im[j] = q.im();
        if (!q.im().is_zero()) has_im = true;
      }
      cond.push_back(std::move(re));
      if (has_im) cond.push_back(std::move(im));
    }
  }
  const auto ker = kernel(cond, mons.size(), one);
  if (ker.empty()) return res;
  std::vector<Numerator<E>> nums;
  for (const auto& v : ker) {
    Numerator<E> n;
    for (std::size_t j = 0; j < mons.size(); ++j) {
      if (v[j].is_zero()) continue;
      n.A += v[j] * mons[j].A;
      n.B += v[j] * mons[j].B;
    }
    nums.push_back(n);
  }
  res.space = Subspace<F>::from_numerators(c, h, nums);
  if (res.expected_dim && *res.expected_dim != res.dim())
    throw TheoremViolation("dim L(" + D.to_string() + ") = " + std::to_string(res.dim()) + ", Riemann-Roch predicts " +
                           std::to_string(*res.expected_dim));
  return res;
}

template <class F>
struct MumfordResult {
  bool equal = false;
  bool hypotheses_met = false;  ///< deg D >= 2g and deg D' >= 2g + 1
  int dim_product = 0;
  int dim_sum = 0;
};

/// Compares L(D) L(D') with L(D + D').
template <class F>
MumfordResult<F> mumford_check(const CurvePtr<F>& c, const Divisor<F>& d1, const Divisor<F>& d2) {
  MumfordResult<F> r;
  const int g = c->genus();
  r.hypotheses_met = d1.degree() >= 2 * g && d2.degree() >= 2 * g + 1;
  const auto a = rr_space(c, d1), b = rr_space(c, d2), s = rr_space(c, d1 + d2);
  r.dim_sum = s.dim();
  if (!a.space || !b.space) {
    r.equal = r.dim_sum == 0;
    return r;
  }
  const auto p = product(*a.space, *b.space);
  r.dim_product = p.dim();
  r.equal = s.space && p == *s.space;
  return r;
}

/// f with (f) = H - G when G and H are linearly equivalent.
template <class F>
std::optional<Element<F>> linearly_equivalent(const CurvePtr<F>& c, const Divisor<F>& G, const Divisor<F>& H) {
  if (G.degree() != H.degree()) return std::nullopt;
  const auto r = rr_space(c, G - H);
  if (r.dim() != 1) return std::nullopt;
  return r.space->basis().front();
}

}  // namespace ffspace
