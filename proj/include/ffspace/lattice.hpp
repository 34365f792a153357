#pragma once

/**
 * @file lattice.hpp
 * @brief The lattice of products S_i S_j of a filtration at a degree-1
 *        place: dimensions, edge weights, the P-index, and the structural
 *        checks that hold along it.
 */

#include <optional>
#include <string>
#include <vector>

#include "ffspace/subspace.hpp"

namespace ffspace {

struct LatticeEdge {
  int i, j;         ///< source vertex S_i S_j (1-based)
  bool horizontal;  ///< S_i S_j -> S_i S_{j+1}; otherwise S_i S_j -> S_{i+1} S_j
  int weight;
};

template <class F>
struct LatticeReport {
  int n = 0;
  int gamma = 0;
  std::vector<std::vector<int>> dims;  ///< dims[i-1][j-1] = dim S_i S_j (symmetric)
  std::optional<int> p_index;
  std::vector<LatticeEdge> heavy_edges;  ///< weight >= 2, i <= j
  bool weights_positive = true;
  bool paths_consistent = true;
  int codim1_checked = 0;
  bool codim1_holds = true;
  std::optional<bool> dsi_holds;  ///< set when gamma = 1 and the divisors could be computed
  FilteredBasis<F> basis;         ///< of the normalized space, e_1 = 1
  Subspace<F> normalized;

  int dim(int i, int j) const { return dims[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)]; }
  int horizontal(int i, int j) const { return dim(i, j + 1) - dim(i, j); }
  int vertical(int i, int j) const { return dim(i + 1, j) - dim(i, j); }
};

namespace detail {

/// Coordinates of all products e_a e_b of filtered-basis numerators.
template <class F>
struct ProductTable {
  using E = typename F::Elem;
  std::vector<std::vector<std::vector<E>>> coords;  // [a][b]
  std::size_t cols = 0;

  explicit ProductTable(const FilteredBasis<F>& fb) {
    const auto& c = *fb.elements.front().curve();
    const std::size_t n = fb.numerators.size();
    std::vector<Numerator<E>> prods;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) prods.push_back(mul_numerators(fb.numerators[a], fb.numerators[b], c.D()));
    const auto [maxA, maxB] = Subspace<F>::degree_bounds(prods);
    const auto layout = Subspace<F>::columns(c, maxA, maxB);
    cols = layout.size();
    auto m = Subspace<F>::coordinates(layout, prods, c.zero());
    coords.assign(n, {});
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) coords[a].push_back(std::move(m[a * n + b]));
  }

  /// dim of span{e_a e_b : a < i, b < j} over several (i, j) blocks.
  int span_dim(const std::vector<std::pair<int, int>>& blocks) const {
    Echelon<E> ech(cols);
    for (auto [i, j] : blocks)
      for (int a = 0; a < i; ++a)
        for (int b = 0; b < j; ++b) ech.insert(coords[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
    return static_cast<int>(ech.rank());
  }
};

}  // namespace detail

/// Builds the lattice of S at a degree-1 place (after S <- e_1^{-1} S).
template <class F>
LatticeReport<F> lattice(const Subspace<F>& s, const Place<typename F::Elem>& p) {
  using E = typename F::Elem;
  LatticeReport<F> r;
  r.normalized = normalize_at(s, p);
  r.basis = filtered_basis(r.normalized, p);
  const int n = r.normalized.dim();
  r.n = n;
  detail::ProductTable<F> tab(r.basis);

  r.dims.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int i = 1; i <= n; ++i) {
    Echelon<E> ech(tab.cols);
    for (int a = 0; a < i; ++a)
      for (int b = 0; b < i; ++b) ech.insert(tab.coords[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
    r.dims[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(i - 1)] = static_cast<int>(ech.rank());
    for (int j = i + 1; j <= n; ++j) {
      for (int a = 0; a < i; ++a) ech.insert(tab.coords[static_cast<std::size_t>(a)][static_cast<std::size_t>(j - 1)]);
      r.dims[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = static_cast<int>(ech.rank());
      r.dims[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)] = static_cast<int>(ech.rank());
    }
  }
  r.gamma = r.dim(n, n) - 2 * n + 1;

  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      if (j < n) {
        const int w = r.horizontal(i, j);
        if (w < 1) r.weights_positive = false;
        if (w >= 2) r.heavy_edges.push_back({i, j, true, w});
      }
      if (i < j) {
        const int w = r.vertical(i, j);
        if (w < 1) r.weights_positive = false;
        if (w >= 2) r.heavy_edges.push_back({i, j, false, w});
      }
      // Both two-step paths around each unit square carry the same total.
      if (i < n && j < n && i + 1 <= j) {
        const int right_up = r.horizontal(i, j) + r.vertical(i, j + 1);
        const int up_right = r.vertical(i, j) + r.horizontal(i + 1, j);
        if (right_up != up_right) r.paths_consistent = false;
      }
    }

  // Two weight-1 edges into S_{i+1}S_{j+1} force S_iS_{j+1} = S_{i+1}S_j.
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int top = r.dim(i + 1, j + 1);
      if (top - r.dim(i, j + 1) != 1 || top - r.dim(i + 1, j) != 1) continue;
      ++r.codim1_checked;
      if (tab.span_dim({{i, j + 1}, {i + 1, j}}) != r.dim(i, j + 1)) r.codim1_holds = false;
    }

  if (r.gamma == 1) {
    for (int j = 2; j < n; ++j) {
      bool all2 = true;
      for (int i = 2; i <= j; ++i)
        if (r.horizontal(i, j) != 2) all2 = false;
      if (all2) {
        r.p_index = j;
        break;
      }
    }
    if (r.p_index && n >= 3) {
      try {
        std::vector<Divisor<F>> ds;
        for (int k = 1; k <= n; ++k) ds.push_back(divisor_of(r.basis.filtration(k)));
        const auto step = ds[2] - ds[1];
        bool ok = true;
        for (int j = 2; j < n; ++j)
          if (j != *r.p_index && !(ds[static_cast<std::size_t>(j)] - ds[static_cast<std::size_t>(j - 1)] == step))
            ok = false;
        r.dsi_holds = ok;
      } catch (const UnsupportedError&) {
        // divisors need places the library cannot enumerate
      }
    }
  }
  return r;
}

}  // namespace ffspace
