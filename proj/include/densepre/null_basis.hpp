#pragma once

#include "densepre/types.hpp"

namespace densepre {

enum class BasisKind { bidiagonal_alg3, nested_alg4, fundamental_eq13 };

// Sparse null-space basis. For the bidiagonal kind every row and column of z
// has at most two entries and nnz(z) = |B| + n - 2.
struct NullBasis {
  SparseMatrix z;                    // n x (n - m)
  std::vector<double> pivot_ratios;  // subdiagonal ratios -b_i/b_j, creation order
  double max_abs_ratio = 0.0;        // 0 for a pure identity basis
  BasisKind kind = BasisKind::bidiagonal_alg3;
};

struct BasisOptions {
  double eps = 0.0;               // |value| > eps is a numerical nonzero
  bool normalize_columns = false; // unit 2-norm columns; nnz is unchanged
};

// Basis of the null space of a single row: consecutive numerical nonzeros
// b_i, b_j pair into a column with 1 at i and -b_i/b_j at j; every other
// index contributes an identity column. O(n).
NullBasis construct_single(const SparseMatrix& b_row, const BasisOptions& opt = {});

// Nested construction for an m x n block: each row is eliminated against the
// product of the previous bases.
NullBasis construct_multi(const SparseMatrix& b, const BasisOptions& opt = {});

// Fundamental basis from a single pivot: the pivot row carries -b_j/b_pivot
// for every other nonzero j, identity elsewhere. Dense b makes that row
// dense, which is exactly the pathology the bidiagonal construction avoids.
NullBasis fundamental_basis(const SparseMatrix& b_row, idx pivot);

struct InflationStats {
  idx nnz_reduced = 0;
  double infl = 0.0;
};

// nnz(z1^T a z2) and its ratio to nnz_m. Checks the 4*|A| bound when both
// bases are bidiagonal.
InflationStats inflation_stats(const SparseMatrix& a, const NullBasis& z1, const NullBasis& z2,
                               idx nnz_m);

// 1 + max |ratio| >= sigma_1(z); bidiagonal kind only.
double sigma1_upper_bound(const NullBasis& z);

// Hager-style 1-norm condition estimate of z^T z (formed once, factored with
// the built-in sparse LU). Always >= 1.
double condest_ztz(const NullBasis& z);

}  // namespace densepre
