#include "densepre/saddle.hpp"

#include <algorithm>
#include <cmath>

#include "densepre/dense.hpp"
#include "densepre/kernels.hpp"
#include "densepre/lu.hpp"
#include "densepre/sparse.hpp"

namespace densepre {

void SaddleSystem::validate() const {
  const idx nn = a.nrows;
  const idx mm = b1.nrows;
  if (a.ncols != nn) throw DimensionError("SaddleSystem: A must be square");
  if (mm < 1) throw DimensionError("SaddleSystem: m >= 1 required");
  if (nn < mm) throw DimensionError("SaddleSystem: n >= m required");
  if (b1.ncols != nn || b2.nrows != mm || b2.ncols != nn)
    throw DimensionError("SaddleSystem: B blocks must be m x n");
  if (c.nrows != mm || c.ncols != mm) throw DimensionError("SaddleSystem: C must be m x m");
  if (static_cast<idx>(f.size()) != nn || static_cast<idx>(g.size()) != mm)
    throw DimensionError("SaddleSystem: rhs length mismatch");
}

SparseMatrix assemble(const SaddleSystem& s) {
  return vcat(hcat(s.a, transpose(s.b1)), hcat(s.b2, s.c));
}

DenseVector assemble_rhs(const SaddleSystem& s) {
  DenseVector b = s.f;
  b.insert(b.end(), s.g.begin(), s.g.end());
  return b;
}

namespace {

bool all_zero(const DenseVector& v) {
  for (double x : v)
    if (x != 0.0) return false;
  return true;
}

DenseVector sub(const DenseVector& a, const DenseVector& b) {
  DenseVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

// w with block * w = g, supported on the leftmost usable pivot columns.
DenseVector particular_solution_block(const SparseMatrix& block, const DenseVector& g) {
  const idx m = block.nrows;
  const idx w = block.ncols;
  DenseVector x(w, 0.0);
  if (all_zero(g)) return x;  // the trivial particular solution

  if (m == 1) {
    for (idx p = block.row_ptr[0]; p < block.row_ptr[1]; ++p) {
      if (block.values[p] != 0.0) {
        x[block.col_idx[p]] = g[0] / block.values[p];
        return x;
      }
    }
    throw InconsistentConstraintError("particular solution: zero constraint row with g != 0");
  }

  DenseMatrix d = dense_from_sparse(block);
  DenseVector rhs = g;
  std::vector<std::pair<idx, idx>> pivots;  // (row, col)
  idx rank = 0;
  for (idx cidx = 0; cidx < w && rank < m; ++cidx) {
    idx pr = -1;
    for (idx i = rank; i < m; ++i) {
      if (d.at(i, cidx) != 0.0) {
        pr = i;
        break;  // leftmost column, first usable row
      }
    }
    if (pr < 0) continue;
    if (pr != rank) {
      std::swap_ranges(d.row(rank), d.row(rank) + w, d.row(pr));
      std::swap(rhs[rank], rhs[pr]);
    }
    const double dv = d.at(rank, cidx);
    for (idx i = 0; i < m; ++i) {
      if (i == rank) continue;
      const double l = d.at(i, cidx) / dv;
      if (l != 0.0) {
        kernels::axpy(-l, d.row(rank) + cidx, d.row(i) + cidx, w - cidx);
        rhs[i] -= l * rhs[rank];
      }
    }
    pivots.emplace_back(rank, cidx);
    ++rank;
  }
  for (idx i = rank; i < m; ++i) {
    if (rhs[i] != 0.0)
      throw InconsistentConstraintError("particular solution: rank-deficient constraints with incompatible g");
  }
  for (auto [r, cidx] : pivots) x[cidx] = rhs[r] / d.at(r, cidx);
  return x;
}

DenseVector translate_reduced_solve(const LinearSolver& solver, const SparseMatrix& reduced,
                                    const DenseVector& rhs) {
  try {
    return solver(reduced, rhs);
  } catch (const SingularMatrixError& e) {
    throw SingularReducedSystemError(std::string("reduced system is singular: ") + e.what());
  } catch (const NumericalInstabilityError& e) {
    throw SingularReducedSystemError(std::string("reduced system factorization failed: ") +
                                     e.what());
  }
}

// y from the m x m system G y = r where G = b1 b1^T (+ c^T c in column mode).
DenseVector small_spd_solve(const SparseMatrix& gmat, const DenseVector& r) {
  const idx m = gmat.nrows;
  if (m == 1) {
    double diag = 0.0;
    for (idx p = gmat.row_ptr[0]; p < gmat.row_ptr[1]; ++p)
      if (gmat.col_idx[p] == 0) diag = gmat.values[p];
    if (diag == 0.0) throw SingularMatrixError("y-recovery: zero 1x1 system");
    return {r[0] / diag};
  }
  DenseMatrix d = dense_from_sparse(gmat);
  std::vector<idx> piv;
  if (!dense_lu_factor(d, piv)) throw SingularMatrixError("y-recovery: singular m x m system");
  return dense_lu_solve_factored(d, piv, r);
}

}  // namespace

std::pair<DenseVector, std::optional<double>> particular_solution_row(
    const SparseMatrix& b_row, std::optional<double> c_entry, double g) {
  if (b_row.nrows != 1) throw DimensionError("particular_solution_row: expected a single row");
  const idx n = b_row.ncols;
  DenseVector x(n, 0.0);
  if (g == 0.0) return {x, c_entry ? std::optional<double>(0.0) : std::nullopt};
  for (idx p = b_row.row_ptr[0]; p < b_row.row_ptr[1]; ++p) {
    if (b_row.values[p] != 0.0) {
      x[b_row.col_idx[p]] = g / b_row.values[p];
      return {x, c_entry ? std::optional<double>(0.0) : std::nullopt};
    }
  }
  if (c_entry && *c_entry != 0.0) return {x, g / *c_entry};
  throw InconsistentConstraintError("particular_solution_row: zero row with g != 0");
}

PrestructureResult prestructure_two_sided_with(const SaddleSystem& s, NullBasis z1, NullBasis z2) {
  s.validate();
  if (s.c.nnz() != 0)
    throw RequiresOneSidedError("prestructure_two_sided: C is structurally nonzero");
  PrestructureResult r;
  r.mode = PrestructureMode::two_sided;
  r.z1 = std::move(z1);
  r.z2 = std::move(z2);
  r.x_star = particular_solution_block(s.b2, s.g);
  r.reduced = spgemm(spgemm(transpose(r.z1.z), s.a), r.z2.z);
  const DenseVector ax = spmv(s.a, r.x_star);
  r.rhs = spmv_transpose(r.z1.z, sub(s.f, ax));
  return r;
}

PrestructureResult prestructure_two_sided(const SaddleSystem& s, double eps) {
  s.validate();
  if (s.c.nnz() != 0)
    throw RequiresOneSidedError("prestructure_two_sided: C is structurally nonzero");
  BasisOptions opt;
  opt.eps = eps;
  NullBasis z1 = construct_multi(s.b1, opt);
  NullBasis z2 = construct_multi(s.b2, opt);
  return prestructure_two_sided_with(s, std::move(z1), std::move(z2));
}

PrestructureResult prestructure_one_sided_with(const SaddleSystem& s, OneSidedTarget target,
                                               NullBasis zhat) {
  s.validate();
  const idx n = s.n();
  const idx m = s.m();
  if (zhat.z.nrows != n + m || zhat.z.ncols != n)
    throw DimensionError("prestructure_one_sided: basis must be (n+m) x n");
  PrestructureResult r;
  if (target == OneSidedTarget::row) {
    r.mode = PrestructureMode::one_sided_row;
    SparseMatrix top = slice_rows(zhat.z, 0, n);
    r.z_c = slice_rows(zhat.z, n, n + m);
    r.z2 = NullBasis{std::move(top), zhat.pivot_ratios, zhat.max_abs_ratio, zhat.kind};
    const DenseVector star = particular_solution_block(hcat(s.b2, s.c), s.g);
    r.x_star.assign(star.begin(), star.begin() + n);
    r.y_star.assign(star.begin() + n, star.end());
    r.reduced = add(spgemm(s.a, r.z2.z), spgemm(transpose(s.b1), r.z_c));
    DenseVector rhs = sub(s.f, spmv(s.a, r.x_star));
    rhs = sub(rhs, spmv_transpose(s.b1, r.y_star));
    r.rhs = std::move(rhs);
  } else {
    r.mode = PrestructureMode::one_sided_col;
    SparseMatrix top = slice_rows(zhat.z, 0, n);
    r.z_c = slice_rows(zhat.z, n, n + m);
    r.z1 = NullBasis{std::move(top), zhat.pivot_ratios, zhat.max_abs_ratio, zhat.kind};
    r.x_star.assign(n, 0.0);
    r.y_star.assign(m, 0.0);
    r.reduced = add(spgemm(transpose(r.z1.z), s.a), spgemm(transpose(r.z_c), s.b2));
    DenseVector rhs = spmv_transpose(r.z1.z, s.f);
    const DenseVector wg = spmv_transpose(r.z_c, s.g);
    for (idx i = 0; i < n; ++i) rhs[i] += wg[i];
    r.rhs = std::move(rhs);
  }
  return r;
}

PrestructureResult prestructure_one_sided(const SaddleSystem& s, OneSidedTarget target,
                                          double eps) {
  s.validate();
  BasisOptions opt;
  opt.eps = eps;
  const SparseMatrix block =
      target == OneSidedTarget::row ? hcat(s.b2, s.c) : hcat(s.b1, transpose(s.c));
  NullBasis zhat;
  try {
    zhat = construct_multi(block, opt);
  } catch (const ZeroRowError& e) {
    throw ZeroRowError(std::string("prestructure_one_sided: ") + e.what());
  }
  return prestructure_one_sided_with(s, target, std::move(zhat));
}

SaddleSolution solve_two_sided(const PrestructureResult& p, const SaddleSystem& s,
                               const LinearSolver& solver) {
  if (p.mode != PrestructureMode::two_sided)
    throw InvalidArgumentError("solve_two_sided: prestructure mode mismatch");
  const DenseVector v = translate_reduced_solve(solver, p.reduced, p.rhs);
  DenseVector x = spmv(p.z2.z, v);
  for (idx i = 0; i < s.n(); ++i) x[i] += p.x_star[i];
  const DenseVector r1 = sub(s.f, spmv(s.a, x));
  const DenseVector y =
      small_spd_solve(spgemm(s.b1, transpose(s.b1)), spmv(s.b1, r1));
  SaddleSolution sol;
  sol.residual_inf = residual_inf(s, x, y);
  sol.x = std::move(x);
  sol.y = y;
  return sol;
}

SaddleSolution solve_one_sided(const PrestructureResult& p, const SaddleSystem& s,
                               const LinearSolver& solver) {
  SaddleSolution sol;
  if (p.mode == PrestructureMode::one_sided_row) {
    const DenseVector v = translate_reduced_solve(solver, p.reduced, p.rhs);
    DenseVector x = spmv(p.z2.z, v);
    for (idx i = 0; i < s.n(); ++i) x[i] += p.x_star[i];
    DenseVector y = spmv(p.z_c, v);
    for (idx i = 0; i < s.m(); ++i) y[i] += p.y_star[i];
    sol.residual_inf = residual_inf(s, x, y);
    sol.x = std::move(x);
    sol.y = std::move(y);
    return sol;
  }
  if (p.mode != PrestructureMode::one_sided_col)
    throw InvalidArgumentError("solve_one_sided: prestructure mode mismatch");
  DenseVector x = translate_reduced_solve(solver, p.reduced, p.rhs);
  // y from the normal equations of the dropped block equations
  const DenseVector rf = sub(s.f, spmv(s.a, x));
  const DenseVector rg = sub(s.g, spmv(s.b2, x));
  DenseVector rhs_y = spmv(s.b1, rf);
  const DenseVector ctrg = spmv_transpose(s.c, rg);
  for (idx i = 0; i < s.m(); ++i) rhs_y[i] += ctrg[i];
  const SparseMatrix gram = add(spgemm(s.b1, transpose(s.b1)), spgemm(transpose(s.c), s.c));
  DenseVector y = small_spd_solve(gram, rhs_y);
  sol.residual_inf = residual_inf(s, x, y);
  sol.x = std::move(x);
  sol.y = std::move(y);
  return sol;
}

double residual_inf(const SaddleSystem& s, const DenseVector& x, const DenseVector& y) {
  DenseVector rt = spmv(s.a, x);
  const DenseVector b1ty = spmv_transpose(s.b1, y);
  for (idx i = 0; i < s.n(); ++i) rt[i] += b1ty[i] - s.f[i];
  DenseVector rb = spmv(s.b2, x);
  const DenseVector cy = spmv(s.c, y);
  for (idx i = 0; i < s.m(); ++i) rb[i] += cy[i] - s.g[i];
  const double num = std::max(kernels::inf_norm(rt), kernels::inf_norm(rb));
  const double den = std::max(kernels::inf_norm(s.f), kernels::inf_norm(s.g));
  return den > 0.0 ? num / den : num;
}

InvertibilityReport verify_invertibility_conditions(const SaddleSystem& s) {
  s.validate();
  const idx n = s.n();
  const idx m = s.m();
  if (n + m > 300) throw DeskScaleOnlyError("verify_invertibility_conditions: n + m > 300");

  InvertibilityReport rep;
  rep.b1_full_rank = dense_rank(dense_from_sparse(s.b1)) == m;
  rep.b2_full_rank = dense_rank(dense_from_sparse(s.b2)) == m;

  // N(A) ∩ N(B2) = N([A; B2])
  rep.kernels_disjoint = dense_rank(dense_from_sparse(vcat(s.a, s.b2))) == n;

  // R(A|N(B2)) ∩ R(B1^T) = {0} iff ranks add up in [A*N | B1^T]
  const std::vector<DenseVector> nb2 = dense_nullspace(dense_from_sparse(s.b2));
  const idx k = static_cast<idx>(nb2.size());
  DenseMatrix wmat(n, k + m);
  for (idx j = 0; j < k; ++j) {
    const DenseVector av = spmv(s.a, nb2[j]);
    for (idx i = 0; i < n; ++i) wmat.at(i, j) = av[i];
  }
  const SparseMatrix b1t = transpose(s.b1);
  for (idx i = 0; i < n; ++i)
    for (idx p = b1t.row_ptr[i]; p < b1t.row_ptr[i + 1]; ++p)
      wmat.at(i, k + b1t.col_idx[p]) = b1t.values[p];
  DenseMatrix wonly(n, k);
  for (idx i = 0; i < n; ++i)
    for (idx j = 0; j < k; ++j) wonly.at(i, j) = wmat.at(i, j);
  const idx rank_w = dense_rank(std::move(wonly));
  const idx rank_b1 = dense_rank(dense_from_sparse(s.b1));
  rep.ranges_disjoint = dense_rank(std::move(wmat)) == rank_w + rank_b1;
  return rep;
}

}  // namespace densepre
