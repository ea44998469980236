#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "densepre/dense.hpp"
#include "densepre/generators.hpp"
#include "densepre/null_basis.hpp"
#include "densepre/sparse.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace densepre;
using namespace densepre::test;

namespace {

SparseMatrix full_random_row(Rng& rng, idx n) {
  Triplets t(1, n);
  for (idx j = 0; j < n; ++j) t.add(0, j, rng.uniform01());
  return from_triplets(t);
}

SparseMatrix sparse_random_row(Rng& rng, idx n, idx nnz) {
  std::vector<idx> pos(n);
  for (idx i = 0; i < n; ++i) pos[i] = i;
  for (idx i = 0; i < nnz; ++i) std::swap(pos[i], pos[rng.uniform_int(i, n - 1)]);
  std::sort(pos.begin(), pos.begin() + nnz);
  Triplets t(1, n);
  for (idx i = 0; i < nnz; ++i) t.add(0, pos[i], rng.uniform01());
  return from_triplets(t);
}

double entry(const SparseMatrix& a, idx i, idx j) {
  for (idx p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p)
    if (a.col_idx[p] == j) return a.values[p];
  return 0.0;
}

idx max_row_degree(const SparseMatrix& a) {
  idx d = 0;
  for (idx i = 0; i < a.nrows; ++i) d = std::max(d, a.row_nnz(i));
  return d;
}

idx max_col_degree(const SparseMatrix& a) {
  std::vector<idx> c(a.ncols, 0);
  for (idx j : a.col_idx) ++c[j];
  idx d = 0;
  for (idx v : c) d = std::max(d, v);
  return d;
}

}  // namespace

TEST_CASE("the displayed 8x7 basis is reproduced bit for bit") {
  const NullBasis nb = construct_single(eq16_b_row());
  const SparseMatrix& z = nb.z;
  REQUIRE(z.nrows == 8);
  REQUIRE(z.ncols == 7);
  CHECK(z.nnz() == 10);  // |B| + n - 2 = 4 + 8 - 2

  CHECK(entry(z, 0, 0) == 1.0);
  CHECK(entry(z, 1, 1) == 1.0);
  CHECK(entry(z, 2, 1) == 1.0 / 3.0);
  CHECK(entry(z, 2, 2) == 1.0);
  CHECK(entry(z, 3, 3) == 1.0);
  CHECK(entry(z, 4, 2) == -3.0);
  CHECK(entry(z, 4, 4) == 1.0);
  CHECK(entry(z, 5, 4) == 0.5);
  CHECK(entry(z, 6, 5) == 1.0);
  CHECK(entry(z, 7, 6) == 1.0);

  CHECK(basis_residual(eq16_b_row(), z) == 0.0);  // exact cancellation here
  REQUIRE(nb.pivot_ratios.size() == 3);
  CHECK(nb.pivot_ratios[0] == 1.0 / 3.0);
  CHECK(nb.pivot_ratios[1] == -3.0);
  CHECK(nb.pivot_ratios[2] == 0.5);
  CHECK(nb.max_abs_ratio == 3.0);

  // its transpose is the 7x8 matrix with the same 10 entries
  const SparseMatrix zt = transpose(z);
  CHECK(zt.nrows == 7);
  CHECK(zt.ncols == 8);
  CHECK(zt.nnz() == 10);
}

TEST_CASE("a single-entry row yields the identity tail") {
  Triplets t(1, 6);
  t.add(0, 0, 5.0);
  const NullBasis nb = construct_single(from_triplets(t));
  CHECK(nb.z.nnz() == 5);
  CHECK(nb.max_abs_ratio == 0.0);
  for (idx j = 1; j < 6; ++j) CHECK(entry(nb.z, j, j - 1) == 1.0);
  CHECK(sigma1_upper_bound(nb) == 1.0);
}

TEST_CASE("a full random row gives the exact count and a tiny residual") {
  Rng rng(12);
  const idx n = 500;
  const SparseMatrix b = full_random_row(rng, n);
  const NullBasis nb = construct_single(b);
  CHECK(nb.z.nnz() == n + n - 2);
  const double tol = 1e-13 * row_inf_norm(b) * std::max(1.0, nb.max_abs_ratio);
  CHECK(basis_residual(b, nb.z) < tol);
}

TEST_CASE("degenerate and error inputs") {
  CHECK_THROWS_AS(construct_single(SparseMatrix(1, 1)), DimensionError);
  CHECK_THROWS_AS(construct_single(SparseMatrix(1, 5)), ZeroRowError);
  Triplets t(1, 5);
  t.add(0, 2, 1e-14);
  BasisOptions opt;
  opt.eps = 1e-12;
  CHECK_THROWS_AS(construct_single(from_triplets(t), opt), ZeroRowError);
}

TEST_CASE("entries at or below eps are treated as zeros") {
  Triplets t(1, 6);
  t.add(0, 1, 1.0);
  t.add(0, 2, 1e-15);
  t.add(0, 4, 2.0);
  BasisOptions opt;
  opt.eps = 1e-12;
  const NullBasis nb = construct_single(from_triplets(t), opt);
  // pairs (1,4) only; indices 0,2,3,5 give identity columns
  CHECK(nb.pivot_ratios.size() == 1);
  CHECK(nb.pivot_ratios[0] == -0.5);
  CHECK(entry(nb.z, 2, 2) == 1.0);
}

TEST_CASE("structural properties hold for random rows") {
  Rng rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    const idx n = rng.uniform_int(2, 300);
    const idx r = rng.uniform_int(1, n);
    const SparseMatrix b = sparse_random_row(rng, n, r);
    const NullBasis nb = construct_single(b);
    CHECK(nb.z.nnz() == r + n - 2);
    CHECK(max_row_degree(nb.z) <= 2);
    CHECK(max_col_degree(nb.z) <= 2);
    const double tol =
        1e-12 * row_inf_norm(b) * std::max(1.0, nb.max_abs_ratio) + 1e-300;
    CHECK(basis_residual(b, nb.z) <= tol);
  }
}

TEST_CASE("basis columns are linearly independent (dense rank oracle)") {
  Rng rng(14);
  for (int trial = 0; trial < 8; ++trial) {
    const idx n = rng.uniform_int(4, 60);
    const SparseMatrix b = sparse_random_row(rng, n, rng.uniform_int(1, n));
    const NullBasis nb = construct_single(b);
    CHECK(dense_rank(dense_from_sparse(nb.z)) == n - 1);
  }
}

TEST_CASE("normalized columns keep the count and the null property") {
  Rng rng(15);
  const SparseMatrix b = full_random_row(rng, 40);
  BasisOptions opt;
  opt.normalize_columns = true;
  const NullBasis nb = construct_single(b, opt);
  CHECK(nb.z.nnz() == 40 + 40 - 2);
  std::vector<double> norm2(nb.z.ncols, 0.0);
  for (idx p = 0; p < nb.z.nnz(); ++p) norm2[nb.z.col_idx[p]] += nb.z.values[p] * nb.z.values[p];
  for (double s : norm2) CHECK(std::fabs(s - 1.0) < 1e-14);
  CHECK(basis_residual(b, nb.z) < 1e-13 * row_inf_norm(b) * std::max(1.0, nb.max_abs_ratio));
}

TEST_CASE("construct_multi with one row equals construct_single") {
  Rng rng(16);
  const SparseMatrix b = sparse_random_row(rng, 30, 11);
  const NullBasis a = construct_single(b);
  const NullBasis c = construct_multi(b);
  CHECK(a.z == c.z);
  CHECK(c.kind == BasisKind::bidiagonal_alg3);
}

TEST_CASE("disjoint elementary rows span the complementary identity") {
  Triplets t(2, 4);
  t.add(0, 0, 1.0);
  t.add(1, 1, 1.0);
  const SparseMatrix b = from_triplets(t);
  const NullBasis nb = construct_multi(b);
  CHECK(nb.z.nrows == 4);
  CHECK(nb.z.ncols == 2);
  CHECK(basis_residual(b, nb.z) == 0.0);
  CHECK(entry(nb.z, 2, 0) + entry(nb.z, 3, 0) == 1.0);  // columns are e3, e4 in some order
  CHECK(dense_rank(dense_from_sparse(nb.z)) == 2);
}

TEST_CASE("random multi-row blocks: residual and rank") {
  Rng rng(17);
  Triplets t(3, 12);
  for (idx i = 0; i < 3; ++i)
    for (idx j = 0; j < 12; ++j) t.add(i, j, rng.uniform01() * 2.0 - 1.0);
  const SparseMatrix b = from_triplets(t);
  const NullBasis nb = construct_multi(b);
  CHECK(nb.z.nrows == 12);
  CHECK(nb.z.ncols == 9);
  CHECK(nb.kind == BasisKind::nested_alg4);
  CHECK(basis_residual(b, nb.z) < 1e-11 * row_inf_norm(b) * std::max(1.0, nb.max_abs_ratio));
  CHECK(dense_rank(dense_from_sparse(nb.z)) == 9);
}

TEST_CASE("a dependent row is reported with its index") {
  Triplets t(2, 5);
  for (idx j = 0; j < 5; ++j) {
    t.add(0, j, 1.0 + j);
    t.add(1, j, 2.0 * (1.0 + j));  // row 1 = 2 * row 0
  }
  try {
    construct_multi(from_triplets(t));
    CHECK(false);
  } catch (const RankDeficiencyError& e) {
    CHECK(std::string(e.what()).find("row 1") != std::string::npos);
  }
}

TEST_CASE("fundamental basis of a dense row has a dense pivot row") {
  Rng rng(18);
  const idx n = 8;
  const SparseMatrix b = full_random_row(rng, n);
  const NullBasis nb = fundamental_basis(b, 0);
  CHECK(nb.kind == BasisKind::fundamental_eq13);
  CHECK(nb.z.row_nnz(0) == n - 1);
  CHECK(nb.z.nnz() == n + n - 2);
  CHECK(basis_residual(b, nb.z) < 1e-13 * row_inf_norm(b) * std::max(1.0, nb.max_abs_ratio));
}

TEST_CASE("fundamental basis of an elementary row is the identity tail") {
  Triplets t(1, 5);
  t.add(0, 0, 3.0);
  const SparseMatrix b = from_triplets(t);
  CHECK(fundamental_basis(b, 0).z == construct_single(b).z);
}

TEST_CASE("fundamental basis pivot-row values on the worked row") {
  const NullBasis nb = fundamental_basis(eq16_b_row(), 1);
  // remaining indices in column order: 0,2,3,4,5,6,7 -> columns 0..6
  CHECK(entry(nb.z, 1, 1) == 3.0);   // -(-3)/1 at the column for index 2
  CHECK(entry(nb.z, 1, 3) == 1.0);   // -(-1)/1 at the column for index 4
  CHECK(entry(nb.z, 1, 4) == -2.0);  // -(2)/1 at the column for index 5
  CHECK(nb.z.nnz() == 8 + 4 - 2);
  CHECK_THROWS_AS(fundamental_basis(eq16_b_row(), 0), ZeroPivotError);
}

TEST_CASE("inflation_stats on the 3x3 identity with an elementary row") {
  Triplets t(1, 3);
  t.add(0, 0, 1.0);
  const SparseMatrix b = from_triplets(t);
  const NullBasis z = construct_single(b);
  const InflationStats s = inflation_stats(SparseMatrix::identity(3), z, z, 7);
  CHECK(s.nnz_reduced == 2);  // z^T z = I_2
  CHECK(s.infl == doctest::Approx(2.0 / 7.0));
}

TEST_CASE("the 4|A| structural bound holds for random systems") {
  Rng rng(19);
  for (int trial = 0; trial < 25; ++trial) {
    const idx n = rng.uniform_int(10, 200);
    Triplets ta(n, n);
    for (idx i = 0; i < n; ++i) {
      ta.add(i, i, 1.0);
      for (idx j = 0; j < n; ++j)
        if (rng.uniform01() < 0.05) ta.add(i, j, rng.uniform01());
    }
    const SparseMatrix a = from_triplets(ta);
    const NullBasis z1 = construct_single(full_random_row(rng, n));
    const NullBasis z2 = construct_single(full_random_row(rng, n));
    const InflationStats s = inflation_stats(a, z1, z2, 3 * n + 1);
    CHECK(s.nnz_reduced <= 4 * a.nnz());  // inflation_stats also asserts this
  }
}

TEST_CASE("sigma1 bound for a 2-vector is exact enough") {
  Triplets t(1, 2);
  t.add(0, 0, 1.0);
  t.add(0, 1, 2.0);
  const NullBasis nb = construct_single(from_triplets(t));
  CHECK(sigma1_upper_bound(nb) == 1.5);
  // true sigma1 of [1; -1/2] is sqrt(1.25)
  CHECK(power_sigma1(nb.z) == doctest::Approx(std::sqrt(1.25)).epsilon(1e-8));
  CHECK(power_sigma1(nb.z) <= 1.5);
}

TEST_CASE("sigma1 bound dominates the power-iteration estimate") {
  Rng rng(20);
  for (int trial = 0; trial < 30; ++trial) {
    const idx n = rng.uniform_int(3, 100);
    const NullBasis nb = construct_single(full_random_row(rng, n));
    CHECK(power_sigma1(nb.z) <= sigma1_upper_bound(nb) * (1.0 + 1e-10));
  }
}

TEST_CASE("sigma1 bound rejects other basis kinds") {
  Rng rng(21);
  const NullBasis nb = fundamental_basis(full_random_row(rng, 6), 0);
  CHECK_THROWS_AS(sigma1_upper_bound(nb), UnsupportedBasisKindError);
}

TEST_CASE("condest of the identity-tail basis is exactly one") {
  Triplets t(1, 7);
  t.add(0, 0, 2.0);
  const NullBasis nb = construct_single(from_triplets(t));
  CHECK(condest_ztz(nb) == 1.0);
}

TEST_CASE("wild ratios are flagged as ill conditioning") {
  Triplets t(1, 3);
  t.add(0, 0, 1.0);
  t.add(0, 1, 1e6);
  t.add(0, 2, 1.0);
  const NullBasis nb = construct_single(from_triplets(t));
  CHECK(condest_ztz(nb) >= 1e10);
}

TEST_CASE("condest tracks the dense condition number within a factor of ten") {
  Rng rng(22);
  for (int trial = 0; trial < 6; ++trial) {
    const idx n = rng.uniform_int(10, 200);
    const NullBasis nb = construct_single(full_random_row(rng, n));
    const SparseMatrix ztz = spgemm(transpose(nb.z), nb.z);
    const double exact = dense_cond1(ztz);
    const double est = condest_ztz(nb);
    CHECK(est <= exact * (1.0 + 1e-8));
    CHECK(est >= exact / 10.0);
  }
}
