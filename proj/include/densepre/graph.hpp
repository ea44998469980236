#pragma once

#include "densepre/types.hpp"

namespace densepre {

struct EliminationTree {
  std::vector<idx> parent;  // parent[j] > j, or -1 at roots
  idx height = 0;           // vertices on the longest root path; >= 1 when ncols >= 1
};

struct DensityReport {
  // A row is dense when it has more than 10*sqrt(ncols) entries; columns use
  // 10*sqrt(nrows). The two thresholds coincide for square input.
  idx row_threshold = 0;
  idx col_threshold = 0;
  std::vector<idx> dense_rows;
  std::vector<idx> dense_cols;
};

struct ProductNnz {
  std::vector<idx> row_counts;
  idx total = 0;
};

// Number of b-column vertices reachable from each a-row vertex in the
// layered graph of the product a*b (no cancellation).
ProductNnz predict_product_nnz(const SparseMatrix& a, const SparseMatrix& b);

DensityReport detect_dense_rows(const SparseMatrix& a);

// Column elimination tree: the elimination tree of a^T a, built from the
// pattern of a alone.
EliminationTree column_etree(const SparseMatrix& a);

std::vector<idx> etree_postorder(const std::vector<idx>& parent);

// Column counts of the Cholesky factor of a^T a (diagonal included),
// computed without forming a^T a.
std::vector<idx> cholesky_col_counts_ata(const SparseMatrix& a, const std::vector<idx>& parent,
                                         const std::vector<idx>& post);

// Column counts of the Cholesky factor of a symmetric pattern given by its
// upper triangle in CSR (row j holds columns >= j).
std::vector<idx> cholesky_col_counts(const SparseMatrix& upper, const std::vector<idx>& parent,
                                     const std::vector<idx>& post);

// Elimination tree of a symmetric pattern (both triangles present).
std::vector<idx> etree_symmetric(const SparseMatrix& a);

// nnz of the Householder trapezoid V in a symbolic QR of a.
idx householder_vnz(const SparseMatrix& a, const std::vector<idx>& parent);

// Upper bound on |L| + |U| for an LU factorization of a with row pivoting:
// |V| bounds L, the Cholesky factor R of a^T a bounds U, diagonal counted
// once. Matches what symbolic analysis tools report for the natural column
// order.
idx symbolic_fill_bound(const SparseMatrix& a);

}  // namespace densepre
