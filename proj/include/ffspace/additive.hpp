#pragma once

/**
 * @file additive.hpp
 * @brief Integer-set additive combinatorics: sumsets, Freiman's lemma, and
 *        the structure of sets with |A+A| = 2|A|.
 */

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ffspace/errors.hpp"
#include "ffspace/field.hpp"
#include "ffspace/linalg.hpp"

namespace ffspace {

using IntSet = std::vector<std::int64_t>;
using IntVec = std::vector<std::int64_t>;

/// Sorts and deduplicates.
inline IntSet make_intset(std::vector<std::int64_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline IntSet sumset(const IntSet& a, const IntSet& b) {
  std::vector<std::int64_t> out;
  out.reserve(a.size() * b.size());
  for (auto x : a)
    for (auto y : b) out.push_back(x + y);
  return make_intset(std::move(out));
}

/// Dimension of the affine span of a set of integer vectors, over Q.
inline int affine_rank(const std::vector<IntVec>& a) {
  if (a.size() <= 1) return 0;
  const std::size_t dim = a.front().size();
  Matrix<Rational> m;
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (a[i].size() != dim) throw InputError("vectors of unequal length");
    std::vector<Rational> row;
    for (std::size_t k = 0; k < dim; ++k) row.emplace_back(static_cast<long>(a[i][k] - a[0][k]));
    m.push_back(std::move(row));
  }
  return static_cast<int>(rank(std::move(m)));
}

/// |A+A| >= (d+1)|A| - d(d+1)/2 for a set of affine dimension d.
inline bool freiman_lemma_holds(const std::vector<IntVec>& a, int d) {
  if (a.empty()) throw InputError("empty set");
  const int r = affine_rank(a);
  if (r != d) throw InputError("declared dimension " + std::to_string(d) + " but affine rank is " + std::to_string(r));
  std::set<IntVec> uniq(a.begin(), a.end());
  std::set<IntVec> sums;
  for (const auto& u : uniq)
    for (const auto& v : uniq) {
      IntVec s(u.size());
      for (std::size_t k = 0; k < u.size(); ++k) s[k] = u[k] + v[k];
      sums.insert(std::move(s));
    }
  const std::int64_t k = static_cast<std::int64_t>(uniq.size());
  return static_cast<std::int64_t>(sums.size()) >= (d + 1) * k - d * (d + 1) / 2;
}

/// A = a + d*{0, 2, 3, ..., n}. `reflected` is set when the match needed
/// x -> max A - x; `scale` is the gcd of the differences.
struct HoleProgression {
  std::int64_t a = 0;
  std::int64_t d = 0;
  std::int64_t n = 0;
  bool reflected = false;
  std::int64_t scale = 1;

  IntSet rebuild() const {
    IntSet out{a};
    for (std::int64_t k = 2; k <= n; ++k) out.push_back(a + d * k);
    return make_intset(std::move(out));
  }
  friend bool operator==(const HoleProgression&, const HoleProgression&) = default;
};

inline std::optional<HoleProgression> structure_2k(const IntSet& in) {
  const IntSet a = make_intset(in);
  if (a.size() < 4) throw InputError("structure_2k needs |A| >= 4");
  const auto n = static_cast<std::int64_t>(a.size());
  if (static_cast<std::int64_t>(sumset(a, a).size()) != 2 * n) return std::nullopt;

  const std::int64_t lo = a.front(), hi = a.back();
  std::int64_t g = 0;
  for (auto x : a) g = std::gcd(g, x - lo);

  auto matches = [&](const IntSet& b) {
    if (b.front() != 0 || b.size() != a.size()) return false;
    for (std::size_t k = 1; k < b.size(); ++k)
      if (b[k] != static_cast<std::int64_t>(k) + 1) return false;
    return true;
  };
  IntSet fwd, back;
  for (auto x : a) {
    fwd.push_back((x - lo) / g);
    back.push_back((hi - x) / g);
  }
  back = make_intset(std::move(back));
  if (matches(fwd)) return HoleProgression{lo, g, n, false, g};
  if (matches(back)) return HoleProgression{hi, -g, n, true, g};
  return std::nullopt;
}

}  // namespace ffspace
