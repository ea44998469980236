#pragma once

#include "densepre/graph.hpp"
#include "densepre/types.hpp"

namespace densepre {

// Fill-reducing column ordering: approximate minimum degree on the pattern
// of a^T a held in quotient-graph form (the rows of a are the elements, so
// the clique of a dense row is never expanded into edges). Columns with more
// than 10*sqrt(n) entries are excluded from the graph and ordered last.
std::vector<idx> min_degree_order(const SparseMatrix& a);

struct SymbolicPlan {
  std::vector<idx> col_perm;  // new position k holds original column col_perm[k]
  EliminationTree etree;      // column etree of the permuted pattern
  idx predicted_fill = 0;     // |L| + |U| estimate, diagonal counted once
};

struct LuFactors {
  SparseMatrix l;              // unit lower triangular, unit diagonal stored
  SparseMatrix u;              // upper triangular
  std::vector<idx> row_perm;   // step k eliminated original row row_perm[k]
  std::vector<idx> col_perm;   // step k eliminated original column col_perm[k]
  double growth = 1.0;         // max |entry| seen during elimination / max |a|
};

// Pattern-only analysis: ordering, etree, fill prediction.
SymbolicPlan symbolic(const SparseMatrix& a);

// Left-looking sparse LU with threshold partial pivoting: a pivot must
// satisfy |value| >= pivot_tol * (column max); the diagonal entry is
// preferred when eligible. P a Q = L U.
LuFactors factorize(const SparseMatrix& a, const SymbolicPlan& plan, double pivot_tol = 0.1);

DenseVector lu_solve(const LuFactors& f, const DenseVector& b);
DenseVector lu_solve_transpose(const LuFactors& f, const DenseVector& b);

// symbolic + factorize + solve in one call.
DenseVector sparse_lu_solve(const SparseMatrix& a, const DenseVector& b, double pivot_tol = 0.1);

// Dense LU with partial pivoting on the expanded matrix; test oracle.
// Guarded to n <= 2000.
DenseVector dense_oracle_solve(const SparseMatrix& a, const DenseVector& b);

}  // namespace densepre
