#pragma once

#include "densepre/types.hpp"

namespace densepre {

// Assemble from triplets: duplicates are summed, rows come out sorted.
// Duplicate summation happens in a canonical (col, value) order, so the
// result is bit-identical under any permutation of the input entries.
SparseMatrix from_triplets(const Triplets& t);

// Structural product under the no-cancellation convention: the pattern of
// a*b is the layered-graph path pattern; entries whose value happens to be
// exactly zero are kept as explicit zeros.
SparseMatrix spgemm(const SparseMatrix& a, const SparseMatrix& b);

// y = a * x, accumulated per row in ascending column order.
DenseVector spmv(const SparseMatrix& a, const DenseVector& x);
// y = a^T * x
DenseVector spmv_transpose(const SparseMatrix& a, const DenseVector& x);

SparseMatrix transpose(const SparseMatrix& a);

// Structural sum: union pattern, values added where both present.
SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b);

// Drop entries with |value| <= eps. Opt-in; arithmetic never prunes.
SparseMatrix prune(const SparseMatrix& a, double eps);

// Block helpers: [a b] and [a; b].
SparseMatrix hcat(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix vcat(const SparseMatrix& a, const SparseMatrix& b);

// Rows [begin, end) as a new matrix.
SparseMatrix slice_rows(const SparseMatrix& a, idx begin, idx end);

// Scale every stored value.
SparseMatrix scaled(const SparseMatrix& a, double s);

// Single row as a 1 x ncols matrix.
SparseMatrix extract_row(const SparseMatrix& a, idx i);

// a with rows/columns permuted: out(i, j) = a(row_perm[i], col_perm[j]).
SparseMatrix permuted(const SparseMatrix& a, const std::vector<idx>& row_perm,
                      const std::vector<idx>& col_perm);

double max_abs(const SparseMatrix& a);

void check_invariants(const SparseMatrix& a);

}  // namespace densepre
