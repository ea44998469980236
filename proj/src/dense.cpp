#include "densepre/dense.hpp"

#include <algorithm>
#include <cmath>

#include "densepre/kernels.hpp"

namespace densepre {

DenseMatrix dense_from_sparse(const SparseMatrix& a) {
  DenseMatrix m(a.nrows, a.ncols);
  for (idx i = 0; i < a.nrows; ++i)
    for (idx p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) m.at(i, a.col_idx[p]) += a.values[p];
  return m;
}

bool dense_lu_factor(DenseMatrix& m, std::vector<idx>& piv) {
  const idx n = m.rows;
  piv.resize(n);
  for (idx k = 0; k < n; ++k) {
    idx pr = k;
    double best = std::fabs(m.at(k, k));
    for (idx i = k + 1; i < n; ++i) {
      const double v = std::fabs(m.at(i, k));
      if (v > best) {
        best = v;
        pr = i;
      }
    }
    if (best == 0.0) return false;
    piv[k] = pr;
    if (pr != k) std::swap_ranges(m.row(k), m.row(k) + n, m.row(pr));
    const double d = m.at(k, k);
    for (idx i = k + 1; i < n; ++i) {
      const double l = m.at(i, k) / d;
      m.at(i, k) = l;
      if (l != 0.0) kernels::axpy(-l, m.row(k) + k + 1, m.row(i) + k + 1, n - k - 1);
    }
  }
  return true;
}

DenseVector dense_lu_solve_factored(const DenseMatrix& lu, const std::vector<idx>& piv,
                                    DenseVector b) {
  const idx n = lu.rows;
  for (idx k = 0; k < n; ++k)
    if (piv[k] != k) std::swap(b[k], b[piv[k]]);
  for (idx i = 1; i < n; ++i) b[i] -= kernels::dot(lu.row(i), b.data(), i);
  for (idx i = n - 1; i >= 0; --i) {
    const double s = kernels::dot(lu.row(i) + i + 1, b.data() + i + 1, n - i - 1);
    b[i] = (b[i] - s) / lu.at(i, i);
  }
  return b;
}

idx dense_rank(DenseMatrix m, double tol) {
  const idx r = m.rows, c = m.cols;
  double scale = 0.0;
  for (double v : m.data) scale = std::max(scale, std::fabs(v));
  if (scale == 0.0) return 0;
  const double cutoff = tol * scale;
  idx rank = 0;
  for (idx k = 0; rank < r && k < c; ++k) {
    // full pivot in the remaining block
    idx pi = -1, pj = -1;
    double best = cutoff;
    for (idx i = rank; i < r; ++i) {
      for (idx j = k; j < c; ++j) {
        const double v = std::fabs(m.at(i, j));
        if (v > best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    }
    if (pi < 0) break;
    if (pi != rank) std::swap_ranges(m.row(rank), m.row(rank) + c, m.row(pi));
    if (pj != k)
      for (idx i = 0; i < r; ++i) std::swap(m.at(i, k), m.at(i, pj));
    const double d = m.at(rank, k);
    for (idx i = rank + 1; i < r; ++i) {
      const double l = m.at(i, k) / d;
      if (l != 0.0) kernels::axpy(-l, m.row(rank) + k, m.row(i) + k, c - k);
    }
    ++rank;
  }
  return rank;
}

std::vector<DenseVector> dense_nullspace(DenseMatrix m, double tol) {
  const idx r = m.rows, c = m.cols;
  double scale = 0.0;
  for (double v : m.data) scale = std::max(scale, std::fabs(v));
  const double cutoff = scale == 0.0 ? 0.0 : tol * scale;

  // row echelon with row pivoting, recording pivot columns
  std::vector<idx> pivot_col;
  idx row = 0;
  for (idx j = 0; j < c && row < r; ++j) {
    idx pi = -1;
    double best = cutoff;
    for (idx i = row; i < r; ++i) {
      const double v = std::fabs(m.at(i, j));
      if (v > best) {
        best = v;
        pi = i;
      }
    }
    if (pi < 0) continue;
    if (pi != row) std::swap_ranges(m.row(row), m.row(row) + c, m.row(pi));
    const double d = m.at(row, j);
    kernels::scale(1.0 / d, m.row(row), c);
    m.at(row, j) = 1.0;
    for (idx i = 0; i < r; ++i) {
      if (i == row) continue;
      const double l = m.at(i, j);
      if (l != 0.0) {
        kernels::axpy(-l, m.row(row), m.row(i), c);
        m.at(i, j) = 0.0;
      }
    }
    pivot_col.push_back(j);
    ++row;
  }

  std::vector<char> is_pivot(c, 0);
  for (idx j : pivot_col) is_pivot[j] = 1;
  std::vector<DenseVector> basis;
  for (idx f = 0; f < c; ++f) {
    if (is_pivot[f]) continue;
    DenseVector x(c, 0.0);
    x[f] = 1.0;
    for (std::size_t k = 0; k < pivot_col.size(); ++k) x[pivot_col[k]] = -m.at(k, f);
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace densepre
