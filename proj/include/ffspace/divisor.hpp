#pragma once

/**
 * @file divisor.hpp
 * @brief Divisors keyed by stable place ids, place lookup by id, the
 *        divisor string grammar, and principal divisors.
 *
 * Divisor grammar: a signed sum of terms "[n*]<place id>", for example
 * "5*Pinf", "3*Pinf + 2*P(1)", "P(0,0) - Pinf", "P[x^2 + 1]+". A sign glued
 * to "Pinf" or "P[...]" and not followed by another term is part of the id.
 * "O" is accepted for the single place at infinity of an odd-degree model.
 */

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ffspace/expr.hpp"
#include "ffspace/place.hpp"

namespace ffspace {

namespace detail {

inline std::string strip(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

template <class F>
typename F::Elem parse_scalar(const F& field, std::string_view text) {
  const auto line = Curve<F>::rational(field);
  const auto e = parse_element(line, text);
  if (!e.is_constant()) throw InputError("expected a constant, got \"" + std::string(text) + "\"");
  return e.a().is_zero() ? field.zero() : e.a().num().coeff(0);
}

template <class E>
const Place<E>& find_id(const std::vector<Place<E>>& ps, const std::string& id, std::string_view asked) {
  for (const auto& p : ps)
    if (p.id == id) return p;
  std::string have;
  for (const auto& p : ps) have += (have.empty() ? "" : ", ") + p.id;
  throw InputError("no place \"" + std::string(asked) + "\" on this curve (candidates: " + have + ")");
}

}  // namespace detail

/// Resolves a (possibly non-canonical) place id to the place.
template <class F>
Place<typename F::Elem> place_by_id(const Curve<F>& c, std::string_view raw) {
  using E = typename F::Elem;
  const std::string id = detail::strip(raw);
  const E one = c.one();
  if (id == "O") {
    if (c.is_rational() || c.d() % 2 == 0)
      throw InputError("\"O\" names the single place at infinity of an odd-degree model only");
    return places_at_infinity(c).front();
  }
  if (id.rfind("Pinf", 0) == 0) return detail::find_id(places_at_infinity(c), id, raw);
  if (id.size() >= 3 && id[0] == 'P' && id[1] == '(' && id.back() == ')') {
    const std::string inner = id.substr(2, id.size() - 3);
    const auto comma = inner.find(',');
    const E a = detail::parse_scalar(c.field(), inner.substr(0, comma));
    const Poly<E> lin(std::vector<E>{-a, one});
    const auto ps = places_above(c, lin);
    if (comma == std::string::npos) {
      if (!c.is_rational()) throw InputError("place \"" + id + "\" needs both coordinates on a quadratic model");
      return ps.front();
    }
    if (c.is_rational()) throw InputError("place \"" + id + "\" has a y-coordinate on the rational curve");
    const E b = detail::parse_scalar(c.field(), inner.substr(comma + 1));
    if (!(b * b == c.D()(a))) throw InputError("point \"" + id + "\" is not on " + c.to_string());
    return detail::find_id(ps, "P(" + a.to_string() + "," + b.to_string() + ")", raw);
  }
  if (id.size() >= 3 && id[0] == 'P' && id[1] == '[') {
    const auto close = id.rfind(']');
    if (close == std::string::npos) throw InputError("unterminated place id \"" + id + "\"");
    const std::string suffix = id.substr(close + 1);
    const Poly<E> p = parse_poly(c.field(), id.substr(2, close - 2)).monic();
    if (p.degree() < 1) throw InputError("place \"" + id + "\": constant polynomial");
    const auto fac = factor(p);
    if (fac.factors.size() != 1 || fac.factors[0].mult != 1 || !fac.factors[0].certified)
      throw InputError("place \"" + id + "\": " + p.to_string() + " is not irreducible");
    const auto ps = places_above(c, p);
    if (ps.size() == 1 && suffix.empty()) return ps.front();
    return detail::find_id(ps, "P[" + p.to_string() + "]" + suffix, raw);
  }
  throw InputError("malformed place id \"" + id + "\"");
}

template <class F>
class Divisor {
 public:
  using E = typename F::Elem;
  struct Term {
    Place<E> place;
    int coeff;
  };

  Divisor() = default;
  explicit Divisor(CurvePtr<F> c) : curve_(std::move(c)) {}

  static Divisor single(CurvePtr<F> c, const Place<E>& p, int n = 1) {
    Divisor d(std::move(c));
    d.add(p, n);
    return d;
  }

  const CurvePtr<F>& curve() const { return curve_; }
  const std::map<std::string, Term>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  void add(const Place<E>& p, int n) {
    if (n == 0) return;
    auto it = t_.find(p.id);
    if (it == t_.end()) {
      t_.emplace(p.id, Term{p, n});
    } else if ((it->second.coeff += n) == 0) {
      t_.erase(it);
    }
  }

  int coeff(const std::string& id) const {
    auto it = t_.find(id);
    return it == t_.end() ? 0 : it->second.coeff;
  }

  int degree() const {
    int d = 0;
    for (const auto& [id, t] : t_) d += t.coeff * t.place.degree;
    return d;
  }

  friend Divisor operator+(Divisor a, const Divisor& b) {
    if (!a.curve_) a.curve_ = b.curve_;
    for (const auto& [id, t] : b.t_) a.add(t.place, t.coeff);
    return a;
  }
  Divisor operator-() const {
    Divisor r = *this;
    for (auto& [id, t] : r.t_) t.coeff = -t.coeff;
    return r;
  }
  friend Divisor operator-(const Divisor& a, const Divisor& b) { return a + (-b); }
  friend Divisor operator*(int k, const Divisor& a) {
    Divisor r(a.curve_);
    if (k == 0) return r;
    r.t_ = a.t_;
    for (auto& [id, t] : r.t_) t.coeff *= k;
    return r;
  }
  friend bool operator==(const Divisor& a, const Divisor& b) {
    if (a.t_.size() != b.t_.size()) return false;
    for (const auto& [id, t] : a.t_)
      if (b.coeff(id) != t.coeff) return false;
    return true;
  }
  /// Coefficientwise comparison.
  friend bool operator>=(const Divisor& a, const Divisor& b) {
    for (const auto& [id, t] : a.t_)
      if (t.coeff < b.coeff(id)) return false;
    for (const auto& [id, t] : b.t_)
      if (a.coeff(id) < t.coeff) return false;
    return true;
  }
  friend bool operator<=(const Divisor& a, const Divisor& b) { return b >= a; }
  bool effective() const { return *this >= Divisor(curve_); }

  std::string to_string() const {
    if (t_.empty()) return "0";
    std::string out;
    for (const auto& [id, t] : t_) {
      const int c = t.coeff;
      const int m = c < 0 ? -c : c;
      if (out.empty())
        out += c < 0 ? "-" : "";
      else
        out += c < 0 ? " - " : " + ";
      if (m != 1) out += std::to_string(m) + "*";
      out += id;
    }
    return out;
  }

 private:
  CurvePtr<F> curve_;
  std::map<std::string, Term> t_;
};

/// Parses the divisor grammar described at the top of this header.
template <class F>
Divisor<F> parse_divisor(const CurvePtr<F>& c, std::string_view s) {
  Divisor<F> d(c);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  auto fail = [&](const std::string& msg) {
    throw InputError("divisor syntax error at " + detail::position(s, i) + ": " + msg + " in \"" + std::string(s) + "\"");
  };
  skip();
  if (s.substr(i) == "0") return d;
  bool first = true;
  while (true) {
    skip();
    if (i >= s.size()) {
      if (first) fail("empty divisor");
      break;
    }
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;
    long coeff = 1;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      const std::size_t st = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i - st > 6) fail("coefficient too large");
      coeff = std::stol(std::string(s.substr(st, i - st)));
      skip();
      if (i >= s.size() || s[i] != '*') fail("expected '*' after coefficient");
      ++i;
      skip();
    }
    const std::size_t st = i;
    if (i < s.size() && s[i] == 'O') {
      ++i;
    } else if (s.substr(i, 4) == "Pinf" || s.substr(i, 2) == "P[") {
      if (s.substr(i, 4) == "Pinf") {
        i += 4;
      } else {
        int depth = 0;
        for (; i < s.size(); ++i) {
          if (s[i] == '[') ++depth;
          if (s[i] == ']' && --depth == 0) break;
        }
        if (i >= s.size()) fail("unterminated '['");
        ++i;
      }
      if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        std::size_t k = i + 1;
        while (k < s.size() && std::isspace(static_cast<unsigned char>(s[k]))) ++k;
        const bool glued = k == s.size() || ((k > i + 1) && (s[k] == '+' || s[k] == '-'));
        if (glued) ++i;
      }
    } else if (s.substr(i, 2) == "P(") {
      while (i < s.size() && s[i] != ')') ++i;
      if (i >= s.size()) fail("unterminated '('");
      ++i;
    } else {
      fail("expected a place id");
    }
    d.add(place_by_id(*c, s.substr(st, i - st)), sign * static_cast<int>(coeff));
  }
  return d;
}

/// (f) = sum over places of v_P(f) P.
template <class F>
Divisor<F> principal_divisor(const Element<F>& f) {
  if (f.is_zero()) throw std::domain_error("principal divisor of zero");
  const auto& c = f.curve();
  auto [n, den] = f.numerator_form();
  const Poly<typename F::Elem> zeros = c->is_rational() ? n.A : norm(n, c->D());
  Divisor<F> d(c);
  for (const auto& p : places_over(*c, den * zeros, true)) {
    LocalExpander<F> ex(c, p);
    d.add(p, ex.valuation(f));
  }
  return d;
}

}  // namespace ffspace
