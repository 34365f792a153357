#pragma once

/**
 * @file factor.hpp
 * @brief Square-free decomposition and factorization of univariate
 *        polynomials. Complete over F_p; shallow over Q (rational roots
 *        plus certification of small degrees).
 */

#include <gmpxx.h>

#include <algorithm>
#include <random>
#include <vector>

#include "ffspace/poly.hpp"

namespace ffspace {

template <class E>
struct Factor {
  Poly<E> poly;  ///< monic
  int mult = 1;
  bool certified = true;  ///< false: square-free block of unknown splitting ("unsplit")
};

template <class E>
struct Factorization {
  E unit;
  std::vector<Factor<E>> factors;

  Poly<E> expand() const {
    Poly<E> r = Poly<E>::constant(unit);
    for (const auto& f : factors) r = r * pow(f.poly, f.mult);
    return r;
  }
  bool fully_certified() const {
    return std::all_of(factors.begin(), factors.end(), [](const Factor<E>& f) { return f.certified; });
  }
};

namespace detail {

template <class E>
bool poly_less(const Poly<E>& a, const Poly<E>& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    if (a.coeff(i) == b.coeff(i)) continue;
    return canonical_less(a.coeff(i), b.coeff(i));
  }
  return false;
}

template <class E>
void sort_factors(std::vector<Factor<E>>& v) {
  std::sort(v.begin(), v.end(), [](const Factor<E>& a, const Factor<E>& b) {
    if (a.poly == b.poly) return a.mult < b.mult;
    return poly_less(a.poly, b.poly);
  });
}

/// Base^e mod m with an arbitrary-size exponent.
template <class E>
Poly<E> powmod(Poly<E> base, mpz_class e, const Poly<E>& m) {
  Poly<E> r = Poly<E>::constant(unit_like(m.lead()));
  base = base % m;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = (r * base) % m;
    base = (base * base) % m;
    e >>= 1;
  }
  return r % m;
}

/// Square-free decomposition of a monic polynomial over F_p (handles p-th powers).
inline std::vector<Factor<Fp>> squarefree_fp(const Poly<Fp>& f, int scale = 1) {
  std::vector<Factor<Fp>> out;
  if (f.degree() <= 0) return out;
  const std::uint64_t p = f.lead().modulus();
  Poly<Fp> c = gcd(f, f.derivative());
  Poly<Fp> w = exact_div(f, c);
  int i = 1;
  while (w.degree() > 0) {
    Poly<Fp> y = gcd(w, c);
    Poly<Fp> z = exact_div(w, y);
    if (z.degree() > 0) out.push_back({z.monic(), i * scale, true});
    ++i;
    w = y;
    c = exact_div(c, y);
  }
  if (c.degree() > 0) {
    // c is a polynomial in x^p; Frobenius is the identity on F_p.
    std::vector<Fp> r;
    for (int k = 0; k <= c.degree(); k += static_cast<int>(p)) r.push_back(c.coeff(k));
    auto sub = squarefree_fp(Poly<Fp>(std::move(r)).monic(), scale * static_cast<int>(p));
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

/// Distinct-degree factorization of a square-free monic polynomial.
inline std::vector<std::pair<Poly<Fp>, int>> distinct_degree(Poly<Fp> f) {
  std::vector<std::pair<Poly<Fp>, int>> out;
  const Fp one = f.lead();
  const mpz_class p(static_cast<unsigned long>(one.modulus()));
  const Poly<Fp> x = Poly<Fp>::x(one);
  Poly<Fp> h = x;
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    h = powmod(h, p, f);
    Poly<Fp> g = gcd(f, h - x);
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      f = exact_div(f, g);
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f.monic(), f.degree());
  return out;
}

/// Cantor-Zassenhaus splitting of a product of degree-d irreducibles.
inline void equal_degree(const Poly<Fp>& f, int d, std::mt19937_64& rng, std::vector<Poly<Fp>>& out) {
  if (f.degree() == d) {
    out.push_back(f.monic());
    return;
  }
  const Fp one = f.lead();
  const std::uint64_t p = one.modulus();
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), p, static_cast<unsigned long>(d));
  const mpz_class e = (q - 1) / 2;
  std::uniform_int_distribution<std::uint64_t> coef(0, p - 1);
  for (;;) {
    std::vector<Fp> a;
    for (int i = 0; i < f.degree(); ++i) a.push_back(Fp::raw(coef(rng), p));
    Poly<Fp> ap(std::move(a));
    if (ap.degree() <= 0) continue;
    Poly<Fp> g = gcd(f, ap);
    if (g.degree() <= 0) g = gcd(f, powmod(ap, e, f) - Poly<Fp>::constant(one.make(1)));
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree(exact_div(f, g), d, rng, out);
      return;
    }
  }
}

inline std::vector<mpz_class> divisors(mpz_class n) {
  if (n < 0) n = -n;
  std::vector<mpz_class> primes;
  std::vector<int> exps;
  for (mpz_class d = 2; d * d <= n; ++d) {
    if (d > 1000000) throw UnsupportedError("rational root search: coefficient too large to factor");
    if (n % d == 0) {
      primes.push_back(d);
      exps.push_back(0);
      while (n % d == 0) {
        n /= d;
        ++exps.back();
      }
    }
  }
  if (n > 1) {
    primes.push_back(n);
    exps.push_back(1);
  }
  std::vector<mpz_class> out{1};
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const std::size_t m = out.size();
    mpz_class pk = 1;
    for (int k = 1; k <= exps[i]; ++k) {
      pk *= primes[i];
      for (std::size_t j = 0; j < m; ++j) out.push_back(out[j] * pk);
    }
  }
  return out;
}

/// Yun's square-free decomposition over a field of characteristic 0.
inline std::vector<Factor<Rational>> squarefree_q(const Poly<Rational>& f) {
  std::vector<Factor<Rational>> out;
  if (f.degree() <= 0) return out;
  Poly<Rational> a = f.monic();
  Poly<Rational> b = a.derivative();
  Poly<Rational> c = gcd(a, b);
  Poly<Rational> w = exact_div(a, c);
  Poly<Rational> y = exact_div(b, c);
  Poly<Rational> z = y - w.derivative();
  int i = 1;
  while (w.degree() > 0) {
    Poly<Rational> g = gcd(w, z);
    if (g.degree() > 0) out.push_back({g, i, true});
    w = exact_div(w, g);
    y = exact_div(z, g);
    z = y - w.derivative();
    ++i;
  }
  return out;
}

/// Rational roots of a square-free polynomial, via the rational root test.
inline std::vector<Rational> rational_roots(const Poly<Rational>& f) {
  std::vector<Rational> roots;
  if (f.degree() <= 0) return roots;
  mpz_class l = 1;
  for (const auto& c : f.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
  std::vector<mpz_class> z;
  for (const auto& c : f.coeffs()) z.push_back(c.num() * (l / c.den()));
  int low = 0;
  while (z[static_cast<std::size_t>(low)] == 0) ++low;
  if (low > 0) roots.emplace_back(0L);
  if (static_cast<int>(z.size()) - 1 == low) return roots;
  for (const auto& pn : divisors(z[static_cast<std::size_t>(low)]))
    for (const auto& qd : divisors(z.back()))
      for (int s : {1, -1}) {
        Rational r(pn * s, qd);
        if (f(r).is_zero() && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
      }
  std::sort(roots.begin(), roots.end(), [](const Rational& a, const Rational& b) { return canonical_less(a, b); });
  return roots;
}

}  // namespace detail

/// Factorization over F_p into monic irreducibles.
inline Factorization<Fp> factor(const Poly<Fp>& f) {
  if (f.is_zero()) throw std::domain_error("factor: zero polynomial");
  Factorization<Fp> out{f.lead(), {}};
  std::mt19937_64 rng(0x5eed);
  for (const auto& sq : detail::squarefree_fp(f.monic())) {
    for (const auto& [g, d] : detail::distinct_degree(sq.poly)) {
      std::vector<Poly<Fp>> parts;
      detail::equal_degree(g, d, rng, parts);
      for (auto& q : parts) out.factors.push_back({q, sq.mult, true});
    }
  }
  detail::sort_factors(out.factors);
  return out;
}

/// Factorization over Q: linear factors are split off; the remaining
/// square-free blocks are certified irreducible up to degree 3 and tagged
/// uncertified beyond.
inline Factorization<Rational> factor(const Poly<Rational>& f) {
  if (f.is_zero()) throw std::domain_error("factor: zero polynomial");
  Factorization<Rational> out{f.lead(), {}};
  const Rational one(1L);
  for (const auto& sq : detail::squarefree_q(f)) {
    Poly<Rational> rest = sq.poly;
    for (const auto& r : detail::rational_roots(sq.poly)) {
      Poly<Rational> lin(std::vector<Rational>{-r, one});
      out.factors.push_back({lin, sq.mult, true});
      rest = exact_div(rest, lin);
    }
    if (rest.degree() > 0) out.factors.push_back({rest.monic(), sq.mult, rest.degree() <= 3});
  }
  detail::sort_factors(out.factors);
  return out;
}

/// Distinct roots in K, in canonical order.
template <class E>
std::vector<E> roots(const Poly<E>& f) {
  std::vector<E> r;
  if (f.degree() <= 0) return r;
  if constexpr (std::is_same_v<E, Rational>) {
    for (const auto& sq : detail::squarefree_q(f))
      for (const auto& x : detail::rational_roots(sq.poly)) r.push_back(x);
  } else {
    for (const auto& fac : factor(f).factors)
      if (fac.poly.degree() == 1) r.push_back(-fac.poly.coeff(0));
  }
  std::sort(r.begin(), r.end(), [](const E& a, const E& b) { return canonical_less(a, b); });
  return r;
}

}  // namespace ffspace
