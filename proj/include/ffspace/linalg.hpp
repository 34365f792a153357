#pragma once

/**
 * @file linalg.hpp
 * @brief Dense exact linear algebra over a field: row reduction, rank,
 *        kernels, and an incremental echelon basis.
 */

#include <cstddef>
#include <optional>
#include <vector>

namespace ffspace {

template <class E>
using Matrix = std::vector<std::vector<E>>;

/// In-place reduced row echelon form; returns pivot columns in row order.
/// Rows that become zero are removed.
template <class E>
std::vector<std::size_t> rref(Matrix<E>& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t sel = r;
    while (sel < m.size() && m[sel][c].is_zero()) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[r], m[sel]);
    const E inv = m[r][c].inverse();
    for (auto& x : m[r]) x = x * inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      const E f = m[i][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

template <class E>
std::size_t rank(Matrix<E> m) {
  return rref(m).size();
}

/// Basis of the right kernel {v : m v = 0}; `cols` is needed when m has no rows.
template <class E>
Matrix<E> kernel(Matrix<E> m, std::size_t cols, const E& unit) {
  const auto piv = rref(m);
  std::vector<bool> is_piv(cols, false);
  for (auto c : piv) is_piv[c] = true;
  Matrix<E> out;
  const E zero = unit * E{};
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<E> v(cols, zero);
    v[f] = unit;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m[i][f];
    out.push_back(std::move(v));
  }
  return out;
}

/// Echelon basis grown one vector at a time; rows are kept fully reduced
/// with unit pivots.
template <class E>
class Echelon {
 public:
  explicit Echelon(std::size_t cols = 0) : cols_(cols) {}

  /// Reduce v against the basis; returns the residue (zero iff v is in the span).
  std::vector<E> reduce(std::vector<E> v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const E f = v[piv_[i]];
      if (f.is_zero()) continue;
      for (std::size_t k = 0; k < cols_; ++k) v[k] -= f * rows_[i][k];
    }
    return v;
  }

  bool contains(const std::vector<E>& v) const { return first_nonzero(reduce(v)) == cols_; }

  /// Adds v if it is independent; returns whether the rank grew.
  bool insert(const std::vector<E>& v) {
    auto r = reduce(v);
    const std::size_t p = first_nonzero(r);
    if (p == cols_) return false;
    const E inv = r[p].inverse();
    for (auto& x : r) x = x * inv;
    for (auto& row : rows_) {
      const E f = row[p];
      if (f.is_zero()) continue;
      for (std::size_t k = 0; k < cols_; ++k) row[k] -= f * r[k];
    }
    rows_.push_back(std::move(r));
    piv_.push_back(p);
    return true;
  }

  std::size_t rank() const { return rows_.size(); }
  const Matrix<E>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return piv_; }

 private:
  std::size_t first_nonzero(const std::vector<E>& v) const {
    for (std::size_t k = 0; k < cols_; ++k)
      if (!v[k].is_zero()) return k;
    return cols_;
  }

  std::size_t cols_;
  Matrix<E> rows_;
  std::vector<std::size_t> piv_;
};

}  // namespace ffspace
