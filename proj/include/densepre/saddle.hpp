#pragma once

#include <functional>
#include <optional>

#include "densepre/null_basis.hpp"
#include "densepre/types.hpp"

namespace densepre {

// Blocks of the (n + m) x (n + m) system
//   [ A   B1^T ] [x]   [f]
//   [ B2  C    ] [y] = [g]
// C may be structurally empty.
struct SaddleSystem {
  SparseMatrix a;   // n x n
  SparseMatrix b1;  // m x n
  SparseMatrix b2;  // m x n
  SparseMatrix c;   // m x m, possibly nnz = 0
  DenseVector f;    // n
  DenseVector g;    // m

  idx n() const { return a.nrows; }
  idx m() const { return b1.nrows; }
  void validate() const;
};

SparseMatrix assemble(const SaddleSystem& s);
DenseVector assemble_rhs(const SaddleSystem& s);

enum class PrestructureMode { two_sided, one_sided_row, one_sided_col };
enum class OneSidedTarget { row, column };

struct PrestructureResult {
  PrestructureMode mode = PrestructureMode::two_sided;
  SparseMatrix reduced;  // (n-m) x (n-m) two-sided, n x n one-sided
  DenseVector rhs;
  NullBasis z1;         // two-sided: basis of N(B1); column mode: top block of the test basis
  NullBasis z2;         // two-sided: basis of N(B2); row mode: top n rows of the [B2 C] basis
  SparseMatrix z_c;     // one-sided only: bottom m rows of the augmented basis
  DenseVector x_star;   // B2 x* = g (or B2 x* + C y* = g)
  DenseVector y_star;   // one-sided row mode only
};

struct SaddleSolution {
  DenseVector x;
  DenseVector y;
  double residual_inf = 0.0;  // on the original system, relative
  std::optional<double> diff_vs_oracle;
};

using LinearSolver = std::function<DenseVector(const SparseMatrix&, const DenseVector&)>;

// Particular solution for a single constraint row: zero when g = 0, else the
// first numerical nonzero of [b | c] carries g.
std::pair<DenseVector, std::optional<double>> particular_solution_row(
    const SparseMatrix& b_row, std::optional<double> c_entry, double g);

PrestructureResult prestructure_two_sided(const SaddleSystem& s, double eps = 0.0);
PrestructureResult prestructure_two_sided_with(const SaddleSystem& s, NullBasis z1, NullBasis z2);

PrestructureResult prestructure_one_sided(const SaddleSystem& s, OneSidedTarget target,
                                          double eps = 0.0);
PrestructureResult prestructure_one_sided_with(const SaddleSystem& s, OneSidedTarget target,
                                               NullBasis zhat);

SaddleSolution solve_two_sided(const PrestructureResult& p, const SaddleSystem& s,
                               const LinearSolver& solver);
SaddleSolution solve_one_sided(const PrestructureResult& p, const SaddleSystem& s,
                               const LinearSolver& solver);

// Relative infinity-norm residual of (x, y) on the original system.
double residual_inf(const SaddleSystem& s, const DenseVector& x, const DenseVector& y);

struct InvertibilityReport {
  bool b1_full_rank = false;
  bool b2_full_rank = false;
  bool kernels_disjoint = false;     // N(A) ∩ N(B2) = {0}
  bool ranges_disjoint = false;      // R(A|N(B2)) ∩ R(B1^T) = {0}
  bool all() const { return b1_full_rank && b2_full_rank && kernels_disjoint && ranges_disjoint; }
};

// Dense-oracle check of the invertibility conditions; desk scale only
// (n + m <= 300).
InvertibilityReport verify_invertibility_conditions(const SaddleSystem& s);

}  // namespace densepre
