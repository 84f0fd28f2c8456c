#pragma once

#include "wph/normal_form.hpp"
#include "wph/path.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace wph {

// Submodule of the chains on `ambient`, spanned by the columns of `vectors`.
// Columns are kept in canonical echelon form (Hermite over Z).
template <Scalar T>
struct GradedBasis {
  int degree = 0;
  std::vector<Path> ambient;
  Matrix<T> vectors;

  std::size_t rank() const { return vectors.cols(); }

  Chain chain(std::size_t column) const {
    Chain c(degree);
    for (std::size_t i = 0; i < ambient.size(); ++i)
      if (vectors(i, column) != 0) c.add(ambient[i], to_rational(vectors(i, column)));
    return c;
  }
};

// Weighted (or plain) boundary of the allowed p-paths. Rows are the regular
// (p-1)-paths hit by some column, split into allowed and non-allowed blocks,
// each in lexicographic order.
template <Scalar T>
struct BoundaryMatrix {
  int degree = 0;
  std::vector<Path> columns;
  std::vector<Path> allowed_rows;
  std::vector<Path> non_allowed_rows;
  Matrix<T> allowed_block;
  Matrix<T> non_allowed_block;
};

namespace detail {

struct SparseEntry {
  std::size_t row;
  Rational value;
};

// Boundary faces of each column, split by allowedness of the face. Row ids of
// non-allowed faces index `non_allowed` (in first-seen order).
struct SplitBoundary {
  std::vector<std::vector<SparseEntry>> allowed;      // rows index `allowed_rows`
  std::vector<std::vector<SparseEntry>> non_allowed;  // rows index `non_allowed_rows`
  std::vector<Path> non_allowed_rows;
};

inline SplitBoundary split_boundary(const WeightedDigraph& g, const std::vector<Path>& columns,
                                    const PathIndex& allowed_rows, bool weighted) {
  SplitBoundary out;
  out.allowed.resize(columns.size());
  out.non_allowed.resize(columns.size());
  PathIndex seen;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    for_each_boundary_face(columns[j], g.weights(), weighted, [&](const Path& face, const Rational& c) {
      if (auto it = allowed_rows.find(face); it != allowed_rows.end()) {
        out.allowed[j].push_back({it->second, c});
        return;
      }
      auto [it, inserted] = seen.emplace(face, out.non_allowed_rows.size());
      if (inserted) out.non_allowed_rows.push_back(face);
      out.non_allowed[j].push_back({it->second, c});
    });
  }
  return out;
}

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Groups the columns of a sparse matrix into connected blocks (columns that
// share a nonzero row). Columns with no entries form no block.
inline std::vector<std::vector<std::size_t>> column_blocks(const std::vector<std::vector<SparseEntry>>& cols,
                                                           std::size_t num_rows) {
  DisjointSets sets(cols.size());
  std::vector<std::size_t> owner(num_rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& e : cols[j]) {
      if (owner[e.row] == cols.size()) owner[e.row] = j;
      else sets.unite(owner[e.row], j);
    }
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> slot(cols.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].empty()) continue;
    std::size_t r = sets.find(j);
    if (slot[r] == cols.size()) {
      slot[r] = blocks.size();
      blocks.emplace_back();
    }
    blocks[slot[r]].push_back(j);
  }
  return blocks;
}

template <Scalar T>
Matrix<T> block_matrix(const std::vector<std::vector<SparseEntry>>& cols, const std::vector<std::size_t>& block,
                       std::vector<std::size_t>& rows_out) {
  std::vector<std::size_t> rows;
  for (std::size_t j : block)
    for (const auto& e : cols[j]) rows.push_back(e.row);
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  Matrix<T> m(rows.size(), block.size());
  for (std::size_t k = 0; k < block.size(); ++k)
    for (const auto& e : cols[block[k]]) {
      std::size_t r = static_cast<std::size_t>(std::lower_bound(rows.begin(), rows.end(), e.row) - rows.begin());
      m(r, k) += from_rational<T>(e.value);
    }
  rows_out = std::move(rows);
  return m;
}

// Sorts sparse basis vectors (pivot, entries) by pivot and packs them as columns.
template <Scalar T>
Matrix<T> pack_by_pivot(std::vector<std::pair<std::size_t, std::vector<std::pair<std::size_t, T>>>>& vecs,
                        std::size_t dim) {
  std::sort(vecs.begin(), vecs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Matrix<T> out(dim, vecs.size());
  for (std::size_t c = 0; c < vecs.size(); ++c)
    for (auto& [i, v] : vecs[c].second) out(i, c) = std::move(v);
  return out;
}

}  // namespace detail

template <Scalar T>
BoundaryMatrix<T> boundary_matrix(const WeightedDigraph& g, int p, bool weighted) {
  BoundaryMatrix<T> out;
  out.degree = p;
  out.columns = enumerate_allowed_paths(g, p);
  PathIndex all_rows;
  std::vector<Path> rows;
  for (const auto& col : out.columns)
    for_each_boundary_face(col, g.weights(), weighted, [&](const Path& face, const Rational&) {
      if (all_rows.emplace(face, 0).second) rows.push_back(face);
    });
  std::sort(rows.begin(), rows.end());
  for (const auto& r : rows) (is_allowed(r, g) ? out.allowed_rows : out.non_allowed_rows).push_back(r);
  auto ai = index_paths(out.allowed_rows), ni = index_paths(out.non_allowed_rows);
  out.allowed_block = Matrix<T>(out.allowed_rows.size(), out.columns.size());
  out.non_allowed_block = Matrix<T>(out.non_allowed_rows.size(), out.columns.size());
  for (std::size_t j = 0; j < out.columns.size(); ++j)
    for_each_boundary_face(out.columns[j], g.weights(), weighted, [&](const Path& face, const Rational& c) {
      if (auto it = ai.find(face); it != ai.end()) out.allowed_block(it->second, j) += from_rational<T>(c);
      else out.non_allowed_block(ni.at(face), j) += from_rational<T>(c);
    });
  return out;
}

// Basis of the invariant chains Omega_p: allowed p-chains whose weighted
// boundary is allowed. Computed blockwise: the non-allowed constraint matrix
// splits into independent column blocks, each solved by an exact kernel.
template <Scalar T>
GradedBasis<T> omega_basis(const WeightedDigraph& g, int p, bool weighted = true) {
  GradedBasis<T> out;
  out.degree = p;
  out.ambient = enumerate_allowed_paths(g, p);
  const std::size_t n = out.ambient.size();
  if (p <= 0) {
    out.vectors = Matrix<T>::identity(n);
    return out;
  }
  auto lower = index_paths(enumerate_allowed_paths(g, p - 1));
  auto split = detail::split_boundary(g, out.ambient, lower, weighted);
  std::vector<std::pair<std::size_t, std::vector<std::pair<std::size_t, T>>>> vecs;
  for (std::size_t j = 0; j < n; ++j)
    if (split.non_allowed[j].empty()) vecs.push_back({j, {{j, T(1)}}});
  for (const auto& block : detail::column_blocks(split.non_allowed, split.non_allowed_rows.size())) {
    std::vector<std::size_t> rows;
    auto m = detail::block_matrix<T>(split.non_allowed, block, rows);
    auto k = kernel_basis(m);
    for (std::size_t c = 0; c < k.cols(); ++c) {
      std::vector<std::pair<std::size_t, T>> entries;
      for (std::size_t i = 0; i < block.size(); ++i)
        if (k(i, c) != 0) entries.emplace_back(block[i], k(i, c));
      std::size_t pivot = entries.front().first;
      vecs.emplace_back(pivot, std::move(entries));
    }
  }
  out.vectors = detail::pack_by_pivot<T>(vecs, n);
  return out;
}

// Basis of Gamma_p = A_p + boundary(A_{p+1}). The ambient lists the allowed
// p-paths first, then the non-allowed p-paths reached by boundaries of
// allowed (p+1)-paths. Over Z this is the integral sum, not its saturation.
template <Scalar T>
GradedBasis<T> gamma_basis(const WeightedDigraph& g, int p, bool weighted = true) {
  GradedBasis<T> out;
  out.degree = p;
  out.ambient = enumerate_allowed_paths(g, p);
  const std::size_t allowed = out.ambient.size();
  auto upper = enumerate_allowed_paths(g, p + 1);
  auto split = detail::split_boundary(g, upper, index_paths(out.ambient), weighted);

  // Sort the non-allowed rows lexicographically and renumber.
  std::vector<std::size_t> order(split.non_allowed_rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return split.non_allowed_rows[a] < split.non_allowed_rows[b]; });
  std::vector<std::size_t> rank_of(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    rank_of[order[k]] = k;
    out.ambient.push_back(split.non_allowed_rows[order[k]]);
  }
  for (auto& col : split.non_allowed)
    for (auto& e : col) e.row = rank_of[e.row];

  std::vector<std::pair<std::size_t, std::vector<std::pair<std::size_t, T>>>> vecs;
  for (std::size_t j = 0; j < allowed; ++j) vecs.push_back({j, {{j, T(1)}}});
  for (const auto& block : detail::column_blocks(split.non_allowed, order.size())) {
    std::vector<std::size_t> rows;
    auto m = detail::block_matrix<T>(split.non_allowed, block, rows);
    auto s = span_basis(m);
    for (std::size_t c = 0; c < s.cols(); ++c) {
      std::vector<std::pair<std::size_t, T>> entries;
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (s(i, c) != 0) entries.emplace_back(allowed + rows[i], s(i, c));
      std::size_t pivot = entries.front().first;
      vecs.emplace_back(pivot, std::move(entries));
    }
  }
  out.vectors = detail::pack_by_pivot<T>(vecs, out.ambient.size());
  return out;
}

}  // namespace wph
