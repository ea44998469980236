#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "densepre/dense.hpp"
#include "densepre/generators.hpp"
#include "densepre/graph.hpp"
#include "densepre/kernels.hpp"
#include "densepre/sparse.hpp"
#include "densepre/types.hpp"

namespace densepre::test {

// --- worked 5x5 product example ------------------------------------------

inline SparseMatrix eq2_a() {
  Triplets t(5, 5);
  const idx rows[] = {0, 0, 1, 1, 1, 2, 3, 3, 3, 4};
  const idx cols[] = {1, 3, 0, 3, 4, 2, 0, 1, 4, 3};
  for (int k = 0; k < 10; ++k) t.add(rows[k], cols[k], 1.0);
  return from_triplets(t);
}

inline SparseMatrix eq2_b() {
  Triplets t(5, 5);
  const idx rows[] = {0, 1, 1, 2, 2, 3, 4, 4};
  const idx cols[] = {0, 1, 3, 1, 4, 2, 0, 1};
  for (int k = 0; k < 8; ++k) t.add(rows[k], cols[k], 1.0);
  return from_triplets(t);
}

// the row whose null basis is displayed with entries 1/3, -3, 1/2
inline SparseMatrix eq16_b_row() {
  Triplets t(1, 8);
  t.add(0, 1, 1.0);
  t.add(0, 2, -3.0);
  t.add(0, 4, -1.0);
  t.add(0, 5, 2.0);
  return from_triplets(t);
}

// --- independent oracles ---------------------------------------------------

// layered-graph path enumeration with plain sets
inline idx path_count_product_nnz(const SparseMatrix& a, const SparseMatrix& b) {
  idx total = 0;
  for (idx i = 0; i < a.nrows; ++i) {
    std::set<idx> reach;
    for (idx c : a.row_cols(i)) {
      for (idx j : b.row_cols(c)) reach.insert(j);
    }
    total += static_cast<idx>(reach.size());
  }
  return total;
}

// dense boolean Cholesky closure of pattern(m^T m), diagonal always present
inline idx dense_cholesky_ata_nnz(const SparseMatrix& m) {
  const idx n = m.ncols;
  std::vector<std::vector<char>> c(n, std::vector<char>(n, 0));
  for (idx i = 0; i < m.nrows; ++i) {
    const auto cols = m.row_cols(i);
    for (idx a : cols)
      for (idx b : cols) c[a][b] = 1;
  }
  for (idx i = 0; i < n; ++i) c[i][i] = 1;
  idx nnz = 0;
  for (idx k = 0; k < n; ++k) {
    std::vector<idx> row;
    for (idx j = k; j < n; ++j)
      if (c[k][j]) row.push_back(j);
    nnz += static_cast<idx>(row.size());
    for (idx a : row)
      for (idx b : row) c[a][b] = 1;
  }
  return nnz;
}

// dense simulation of the Householder count: rows queue at their leftmost
// column; eliminating column k consumes one row as the factor row and sends
// the rest up to the parent column, read off a densely computed Cholesky
// pattern of m^T m
inline idx dense_householder_vnz(const SparseMatrix& m) {
  const idx n = m.ncols;
  // dense closure of pattern(m^T m) to find each row's first off-diagonal
  std::vector<std::vector<char>> c(n, std::vector<char>(n, 0));
  for (idx i = 0; i < m.nrows; ++i) {
    const auto cols = m.row_cols(i);
    for (idx a : cols)
      for (idx b : cols) c[a][b] = 1;
  }
  for (idx i = 0; i < n; ++i) c[i][i] = 1;
  std::vector<idx> parent(n, -1);
  for (idx k = 0; k < n; ++k) {
    std::vector<idx> row;
    for (idx j = k + 1; j < n; ++j)
      if (c[k][j]) row.push_back(j);
    if (!row.empty()) parent[k] = row.front();
    for (idx a : row)
      for (idx b : row) c[a][b] = 1;
  }
  std::vector<idx> queue(n, 0);
  for (idx i = 0; i < m.nrows; ++i)
    if (m.row_nnz(i) > 0) ++queue[m.row_cols(i).front()];
  idx vnz = 0;
  for (idx k = 0; k < n; ++k) {
    vnz += std::max<idx>(queue[k], 1);  // diagonal always counted
    if (queue[k] > 1 && parent[k] != -1) queue[parent[k]] += queue[k] - 1;
  }
  return vnz;
}

// largest singular value by power iteration on z^T z; a lower bound on
// sigma_1, which is the safe direction for checking upper bounds
inline double power_sigma1(const SparseMatrix& z, int iters = 2000, double tol = 1e-12) {
  const idx nc = z.ncols;
  DenseVector v(nc);
  Rng rng(1234);
  for (idx i = 0; i < nc; ++i) v[i] = rng.uniform01();
  double lambda = 0.0;
  for (int it = 0; it < iters; ++it) {
    DenseVector w = spmv_transpose(z, spmv(z, v));
    const double nrm = std::sqrt(kernels::dot(w, w));
    if (nrm == 0.0) return 0.0;
    for (idx i = 0; i < nc; ++i) w[i] /= nrm;
    const DenseVector zw = spmv(z, w);
    const double next = kernels::dot(zw, zw);
    if (it > 4 && std::fabs(next - lambda) <= tol * std::max(1.0, lambda)) {
      lambda = next;
      break;
    }
    lambda = next;
    v = std::move(w);
  }
  return std::sqrt(lambda);
}

// exact 1-norm condition number through the dense inverse
inline double dense_cond1(const SparseMatrix& a) {
  const idx n = a.nrows;
  DenseMatrix m = dense_from_sparse(a);
  std::vector<idx> piv;
  if (!dense_lu_factor(m, piv)) return std::numeric_limits<double>::infinity();
  double norm_a = 0.0, norm_inv = 0.0;
  std::vector<double> colsum(n, 0.0);
  for (idx i = 0; i < a.nrows; ++i)
    for (idx p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p)
      colsum[a.col_idx[p]] += std::fabs(a.values[p]);
  for (double s : colsum) norm_a = std::max(norm_a, s);
  for (idx j = 0; j < n; ++j) {
    DenseVector e(n, 0.0);
    e[j] = 1.0;
    const DenseVector x = dense_lu_solve_factored(m, piv, e);
    norm_inv = std::max(norm_inv, kernels::one_norm(x));
  }
  return norm_a * norm_inv;
}

inline double rel_diff_inf(const DenseVector& a, const DenseVector& b) {
  DenseVector d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  const double den = kernels::inf_norm(b);
  return den > 0.0 ? kernels::inf_norm(d) / den : kernels::inf_norm(d);
}

// ||b z||_inf relative residual scale for basis checks
inline double basis_residual(const SparseMatrix& b, const SparseMatrix& z) {
  const SparseMatrix bz = spgemm(b, z);
  double r = 0.0;
  for (double v : bz.values) r = std::max(r, std::fabs(v));
  return r;
}

inline double row_inf_norm(const SparseMatrix& b) {
  double r = 0.0;
  for (double v : b.values) r = std::max(r, std::fabs(v));
  return r;
}

}  // namespace densepre::test
