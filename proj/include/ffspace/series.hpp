#pragma once

/**
 * @file series.hpp
 * @brief Truncated Laurent series with absolute-precision bookkeeping.
 *
 * A series stands for sum_i c_i t^(order + i) known modulo t^prec. Exact
 * series (finite Laurent polynomials) carry prec == kExact. A series with no
 * coefficients is zero to precision; with prec == kExact it is exactly zero.
 */

#include <algorithm>
#include <climits>
#include <string>
#include <vector>

#include "ffspace/errors.hpp"
#include "ffspace/poly.hpp"

namespace ffspace {

inline constexpr int kExact = 1 << 29;

template <class R>
class LaurentSeries {
 public:
  /// Exact zero.
  LaurentSeries() = default;
  /// Exact constant.
  LaurentSeries(const R& c) : order_(0), prec_(kExact) {
    if (!c.is_zero()) c_.push_back(c);
    normalize();
  }
  LaurentSeries(int order, std::vector<R> coeffs, int prec) : order_(order), c_(std::move(coeffs)), prec_(prec) {
    normalize();
  }

  static LaurentSeries monomial(const R& c, int k) { return LaurentSeries(k, {c}, kExact); }
  static LaurentSeries zero_to(int prec) { return LaurentSeries(prec, {}, prec); }
  /// Exact Laurent polynomial t^shift * p(t).
  template <class E>
  static LaurentSeries from_poly(const Poly<E>& p, int shift = 0) {
    std::vector<R> c;
    for (const auto& x : p.coeffs()) c.push_back(R(x));
    return LaurentSeries(shift, std::move(c), kExact);
  }

  bool exact() const { return prec_ >= kExact; }
  bool is_zero() const { return c_.empty(); }
  /// Valuation; for a zero-to-precision series this is the precision.
  int order() const { return c_.empty() ? prec_ : order_; }
  int precision() const { return prec_; }
  const std::vector<R>& coeffs() const { return c_; }
  const R& lead() const { return c_.front(); }

  /// Coefficient of t^k (zero outside the stored range; throws beyond precision).
  R coeff(int k) const {
    if (k >= prec_) throw PrecisionError("coefficient requested beyond series precision");
    const int i = k - order_;
    if (c_.empty() || i < 0 || i >= static_cast<int>(c_.size())) return zero_like();
    return c_[static_cast<std::size_t>(i)];
  }

  LaurentSeries truncated(int prec) const {
    if (prec >= prec_) return *this;
    std::vector<R> c;
    for (int k = order_; k < prec && !c_.empty() && k - order_ < static_cast<int>(c_.size()); ++k)
      c.push_back(c_[static_cast<std::size_t>(k - order_)]);
    return LaurentSeries(c_.empty() ? prec : order_, std::move(c), prec);
  }

  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.exact() && a.is_zero()) return b;
    if (b.exact() && b.is_zero()) return a;
    const int prec = std::min(a.prec_, b.prec_);
    const int lo = std::min(a.order(), b.order());
    int hi = std::max(a.end(), b.end());
    if (hi > prec) hi = prec;
    std::vector<R> c;
    if (hi > lo) {
      c.assign(static_cast<std::size_t>(hi - lo), a.zero_like_with(b));
      a.accumulate(c, lo, hi);
      b.accumulate(c, lo, hi);
    }
    return LaurentSeries(std::min(lo, prec), std::move(c), prec);
  }
  LaurentSeries operator-() const {
    std::vector<R> c(c_);
    for (auto& x : c) x = -x;
    return LaurentSeries(order_, std::move(c), prec_);
  }
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    if ((a.exact() && a.is_zero()) || (b.exact() && b.is_zero())) return {};
    const int ord = a.order() + b.order();
    int prec = kExact;
    if (!a.exact() || !b.exact()) prec = clamp_exact(std::min(a.order() + b.prec_, b.order() + a.prec_));
    if (a.is_zero() || b.is_zero()) return zero_to(prec);
    std::size_t n = a.c_.size() + b.c_.size() - 1;
    if (prec < kExact) n = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(0, prec - ord)));
    std::vector<R> c(n, a.zero_like_with(b));
    for (std::size_t i = 0; i < a.c_.size() && i < n; ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size() && i + j < n; ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return LaurentSeries(ord, std::move(c), prec);
  }
  LaurentSeries& operator+=(const LaurentSeries& o) { return *this = *this + o; }
  LaurentSeries& operator*=(const LaurentSeries& o) { return *this = *this * o; }

  /// Multiplicative inverse to `rel` coefficients of relative precision
  /// (fewer if the input is itself less precise).
  LaurentSeries inverse(int rel) const {
    if (c_.empty()) throw PrecisionError("inverse of a series that is zero to precision");
    int r = rel;
    if (!exact()) r = std::min(r, prec_ - order_);
    std::vector<R> inv(static_cast<std::size_t>(r), zero_like());
    const R l = c_[0].inverse();
    inv[0] = l;
    for (int k = 1; k < r; ++k) {
      R s = zero_like();
      for (int i = 1; i <= k && i < static_cast<int>(c_.size()); ++i)
        s += c_[static_cast<std::size_t>(i)] * inv[static_cast<std::size_t>(k - i)];
      inv[static_cast<std::size_t>(k)] = -(s * l);
    }
    return LaurentSeries(-order_, std::move(inv), -order_ + r);
  }

  /// Square root whose leading coefficient is `root` (root^2 must equal the
  /// leading coefficient); `rel` bounds the relative precision as in inverse().
  LaurentSeries sqrt(const R& root, int rel) const {
    if (c_.empty()) throw PrecisionError("square root of a series that is zero to precision");
    if (order_ % 2 != 0) throw std::domain_error("square root of a series of odd order");
    if (!(root * root == c_[0])) throw std::domain_error("square root: leading root mismatch");
    int r = rel;
    if (!exact()) r = std::min(r, prec_ - order_);
    // s = root * (1 + u_1 t + ...)^(1/2) with u = c / c_0.
    const R c0inv = c_[0].inverse();
    const R half = root.make(2).inverse();
    std::vector<R> s(static_cast<std::size_t>(r), zero_like());
    s[0] = root.make(1);
    for (int k = 1; k < r; ++k) {
      R acc = k < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(k)] * c0inv : zero_like();
      for (int i = 1; i < k; ++i) acc -= s[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(k - i)];
      s[static_cast<std::size_t>(k)] = acc * half;
    }
    for (auto& x : s) x = x * root;
    return LaurentSeries(order_ / 2, std::move(s), order_ / 2 + r);
  }

  std::string to_string(const std::string& var = "t") const {
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += c_[i].to_string() + "*" + var + "^" + std::to_string(order_ + static_cast<int>(i));
    }
    if (out.empty()) out = "0";
    if (!exact()) out += " + O(" + var + "^" + std::to_string(prec_) + ")";
    return out;
  }

 private:
  static int clamp_exact(int p) { return p >= kExact / 2 ? kExact : p; }

  int end() const { return c_.empty() ? prec_ : order_ + static_cast<int>(c_.size()); }

  R zero_like() const { return c_.empty() ? R{} : c_[0] * R{}; }
  R zero_like_with(const LaurentSeries& o) const { return c_.empty() ? o.zero_like() : zero_like(); }

  void accumulate(std::vector<R>& c, int lo, int hi) const {
    for (std::size_t i = 0; i < c_.size(); ++i) {
      const int k = order_ + static_cast<int>(i);
      if (k >= hi) break;
      if (k >= lo) c[static_cast<std::size_t>(k - lo)] += c_[i];
    }
  }

  void normalize() {
    prec_ = clamp_exact(prec_);
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead].is_zero()) ++lead;
    if (lead > 0) {
      c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
      order_ += static_cast<int>(lead);
    }
    if (!c_.empty() && order_ + static_cast<int>(c_.size()) > prec_) c_.resize(static_cast<std::size_t>(std::max(0, prec_ - order_)));
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    if (c_.empty()) order_ = prec_;
  }

  int order_ = kExact;
  std::vector<R> c_;
  int prec_ = kExact;
};

}  // namespace ffspace
