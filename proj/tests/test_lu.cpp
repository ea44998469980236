#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "densepre/generators.hpp"
#include "densepre/lu.hpp"
#include "densepre/saddle.hpp"
#include "densepre/sparse.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace densepre;
using namespace densepre::test;

namespace {

SparseMatrix tridiagonal(idx n, double diag = 2.0, double off = -1.0) {
  Triplets t(n, n);
  for (idx i = 0; i < n; ++i) {
    t.add(i, i, diag);
    if (i + 1 < n) {
      t.add(i, i + 1, off);
      t.add(i + 1, i, off);
    }
  }
  return from_triplets(t);
}

SparseMatrix random_dominant(Rng& rng, idx n, double density) {
  Triplets t(n, n);
  for (idx i = 0; i < n; ++i) {
    double rowsum = 0.0;
    for (idx j = 0; j < n; ++j) {
      if (i != j && rng.uniform01() < density) {
        const double v = rng.uniform01() * 2.0 - 1.0;
        t.add(i, j, v);
        rowsum += std::fabs(v);
      }
    }
    t.add(i, i, rowsum + 1.0);
  }
  return from_triplets(t);
}

// || P a Q - L U ||_inf
double factor_residual(const SparseMatrix& a, const LuFactors& f) {
  const SparseMatrix paq = permuted(a, f.row_perm, f.col_perm);
  const SparseMatrix lu = spgemm(f.l, f.u);
  const SparseMatrix diff = add(paq, scaled(lu, -1.0));
  return max_abs(diff);
}

}  // namespace

TEST_CASE("symbolic on a diagonal matrix") {
  const SymbolicPlan plan = symbolic(SparseMatrix::identity(8));
  for (idx j = 0; j < 8; ++j) CHECK(plan.col_perm[j] == j);
  CHECK(plan.predicted_fill == 8);
}

TEST_CASE("tridiagonal factorization is predicted fill-free") {
  const SparseMatrix a = tridiagonal(64);
  const SymbolicPlan plan = symbolic(a);
  CHECK(plan.predicted_fill == a.nnz());
}

TEST_CASE("the dense border is ordered last and the predicted fill stays linear") {
  ArrowheadSpec spec;
  spec.n = 300;
  spec.b_density = 1.0;
  spec.seed = 4;
  const SparseMatrix m = assemble(arrowhead(spec));
  const SymbolicPlan plan = symbolic(m);
  CHECK(plan.col_perm.back() == 300);  // the dense column
  CHECK(plan.predicted_fill <= 4 * m.nrows);
}

TEST_CASE("symbolic is pattern-deterministic") {
  Rng rng(5);
  const SparseMatrix a = random_dominant(rng, 60, 0.1);
  const SymbolicPlan p1 = symbolic(a);
  const SymbolicPlan p2 = symbolic(a);
  CHECK(p1.col_perm == p2.col_perm);
  CHECK(p1.predicted_fill == p2.predicted_fill);
}

TEST_CASE("identity factors trivially") {
  const SparseMatrix a = SparseMatrix::identity(5);
  const LuFactors f = factorize(a, symbolic(a));
  CHECK(f.l == a);
  CHECK(f.u == a);
  CHECK(factor_residual(a, f) == 0.0);
}

TEST_CASE("an antidiagonal 2x2 pivots by row exchange") {
  Triplets t(2, 2);
  t.add(0, 1, 1.0);
  t.add(1, 0, 1.0);
  const SparseMatrix a = from_triplets(t);
  const LuFactors f = factorize(a, symbolic(a));
  CHECK(f.l.nnz() == 2);  // unit diagonal only
  CHECK(factor_residual(a, f) == 0.0);
}

TEST_CASE("random diagonally dominant systems factor accurately") {
  Rng rng(21);
  const SparseMatrix a = random_dominant(rng, 300, 0.02);
  const LuFactors f = factorize(a, symbolic(a));
  CHECK(factor_residual(a, f) / max_abs(a) < 1e-12);
}

TEST_CASE("factor residual stays bounded on random sparse matrices") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const idx n = rng.uniform_int(5, 120);
    const SparseMatrix a = random_dominant(rng, n, 3.0 / static_cast<double>(n));
    const LuFactors f = factorize(a, symbolic(a), 0.1);
    CHECK(factor_residual(a, f) <= 1e-10 * std::max(1.0, max_abs(a)) * f.growth);
  }
}

TEST_CASE("a zero column is reported singular") {
  Triplets t(3, 3);
  t.add(0, 0, 1.0);
  t.add(1, 1, 1.0);
  t.add(2, 1, 1.0);  // column 2 empty
  const SparseMatrix a = from_triplets(t);
  CHECK_THROWS_AS(factorize(a, symbolic(a)), SingularMatrixError);
}

TEST_CASE("solve recovers manufactured solutions") {
  const SparseMatrix a = tridiagonal(100);
  DenseVector ones(100, 1.0);
  const DenseVector b = spmv(a, ones);
  const DenseVector x = sparse_lu_solve(a, b);
  CHECK(rel_diff_inf(x, ones) < 1e-10);
}

TEST_CASE("solve matches the dense oracle on an arrowhead") {
  ArrowheadSpec spec;
  spec.n = 999;
  spec.b_density = 1.0;
  spec.seed = 6;
  const SparseMatrix m = assemble(arrowhead(spec));
  Rng rng(60);
  DenseVector b(m.nrows);
  for (double& v : b) v = rng.uniform01();
  const DenseVector x = sparse_lu_solve(m, b);
  const DenseVector y = dense_oracle_solve(m, b);
  CHECK(rel_diff_inf(x, y) < 1e-9);
}

TEST_CASE("transpose solve agrees with solving the transposed matrix") {
  Rng rng(71);
  const SparseMatrix a = random_dominant(rng, 80, 0.08);
  DenseVector b(80);
  for (double& v : b) v = rng.uniform01() - 0.5;
  const LuFactors f = factorize(a, symbolic(a));
  const DenseVector x = lu_solve_transpose(f, b);
  const DenseVector want = dense_oracle_solve(transpose(a), b);
  CHECK(rel_diff_inf(x, want) < 1e-9);
}

TEST_CASE("dense oracle basics") {
  const SparseMatrix eye = SparseMatrix::identity(4);
  const DenseVector b = {1, 2, 3, 4};
  CHECK(dense_oracle_solve(eye, b) == b);

  Triplets t(3, 3);  // rank 1
  for (idx i = 0; i < 3; ++i)
    for (idx j = 0; j < 3; ++j) t.add(i, j, 2.0);
  CHECK_THROWS_AS(dense_oracle_solve(from_triplets(t), DenseVector(3, 1.0)), SingularMatrixError);

  CHECK_THROWS_AS(dense_oracle_solve(SparseMatrix::identity(2001), DenseVector(2001, 0.0)),
                  DeskScaleOnlyError);
}

TEST_CASE("dense oracle inverts a Hilbert-like matrix to the expected accuracy") {
  const idx n = 8;
  Triplets t(n, n);
  DenseVector b(n, 0.0);
  for (idx i = 0; i < n; ++i) {
    long double sum = 0.0L;
    for (idx j = 0; j < n; ++j) {
      const long double h = 1.0L / static_cast<long double>(i + j + 1);
      t.add(i, j, static_cast<double>(h));
      sum += h;  // extended-precision row sum = (H * ones)_i
    }
    b[i] = static_cast<double>(sum);
  }
  const DenseVector x = dense_oracle_solve(from_triplets(t), b);
  double err = 0.0;
  for (double v : x) err = std::max(err, std::fabs(v - 1.0));
  CHECK(err < 1e-6);
}

TEST_CASE("growth beyond 1e12 aborts the factorization") {
  // the classic worst case for partial pivoting: unit diagonal, -1 below,
  // ones in the last column; growth is 2^(n-1)
  const idx n = 60;
  Triplets t(n, n);
  for (idx i = 0; i < n; ++i) {
    t.add(i, i, 1.0);
    if (i < n - 1) t.add(i, n - 1, 1.0);
    for (idx j = 0; j < i; ++j) t.add(i, j, -1.0);
  }
  const SparseMatrix a = from_triplets(t);
  // growth needs the natural order; a fill-reducing permutation would defuse it
  SymbolicPlan plan;
  plan.col_perm.resize(n);
  for (idx j = 0; j < n; ++j) plan.col_perm[j] = j;
  CHECK_THROWS_AS(factorize(a, plan), NumericalInstabilityError);
}
