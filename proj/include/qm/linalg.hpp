#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qm/field.hpp"

// Small dense linear algebra over an exact field. Matrices here are at most
// 12 x 12, so a vector-of-rows representation is plenty.
namespace qm::linalg {

template <class E>
using Matrix = std::vector<std::vector<E>>;

template <class E>
struct Echelon {
  Matrix<E> rows;                  // nonzero rows of the reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each row, increasing
};

/// Reduced row echelon form. Pivots are normalized to one.
template <class E>
Echelon<E> rref(Matrix<E> m) {
  Echelon<E> out;
  const std::size_t nrows = m.size();
  if (nrows == 0) return out;
  const std::size_t ncols = m.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
    std::size_t piv = r;
    while (piv < nrows && m[piv][c].is_zero()) ++piv;
    if (piv == nrows) continue;
    std::swap(m[r], m[piv]);
    const E inv = m[r][c].inverse();
    for (auto& x : m[r]) x = x * inv;
    for (std::size_t i = 0; i < nrows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      const E f = m[i][c];
      for (std::size_t j = 0; j < ncols; ++j) m[i][j] = m[i][j] - f * m[r][j];
    }
    out.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

template <class E>
std::size_t rank(const Matrix<E>& m) {
  return rref(m).pivots.size();
}

/// Solves A x = b where A is given by its columns. Returns the solution when
/// it exists and is unique; nullopt when the system is inconsistent.
/// Throws std::invalid_argument if the columns are dependent.
template <class E>
std::optional<std::vector<E>> solve_columns(const std::vector<std::vector<E>>& columns,
                                            const std::vector<E>& rhs) {
  const std::size_t n = columns.size();
  const std::size_t m = rhs.size();
  Matrix<E> aug(m, std::vector<E>(n + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = columns[j].at(i);
    aug[i][n] = rhs[i];
  }
  const auto ech = rref(std::move(aug));
  std::size_t coefficient_pivots = 0;
  for (std::size_t c : ech.pivots) {
    if (c == n) return std::nullopt;
    ++coefficient_pivots;
  }
  if (coefficient_pivots != n) throw std::invalid_argument("solve_columns: dependent columns");
  std::vector<E> x(n, rhs.front() - rhs.front());
  for (std::size_t i = 0; i < ech.pivots.size(); ++i) x[ech.pivots[i]] = ech.rows[i][n];
  return x;
}

}  // namespace qm::linalg
