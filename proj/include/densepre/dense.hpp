#pragma once

#include "densepre/types.hpp"

namespace densepre {

// Row-major dense matrix for desk-scale oracles and m x m recovery solves.
struct DenseMatrix {
  idx rows = 0;
  idx cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(idx r, idx c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

  double& at(idx i, idx j) { return data[i * cols + j]; }
  double at(idx i, idx j) const { return data[i * cols + j]; }
  double* row(idx i) { return data.data() + i * cols; }
  const double* row(idx i) const { return data.data() + i * cols; }
};

DenseMatrix dense_from_sparse(const SparseMatrix& a);

// In-place LU with partial pivoting; false on an exact zero pivot.
bool dense_lu_factor(DenseMatrix& m, std::vector<idx>& piv);
DenseVector dense_lu_solve_factored(const DenseMatrix& lu, const std::vector<idx>& piv,
                                    DenseVector b);

// Rank by Gaussian elimination with full pivoting; tol is relative to the
// largest initial entry.
idx dense_rank(DenseMatrix m, double tol = 1e-10);

// Basis of the (right) null space, one DenseVector per basis vector.
std::vector<DenseVector> dense_nullspace(DenseMatrix m, double tol = 1e-10);

}  // namespace densepre
