#include "densepre/lu.hpp"

#include <algorithm>
#include <cmath>

#include "densepre/dense.hpp"
#include "densepre/sparse.hpp"

namespace densepre {

namespace {

constexpr double kGrowthLimit = 1e12;

SparseMatrix csc_to_csr(idx nrows, idx ncols, const std::vector<idx>& cp,
                        const std::vector<idx>& ri, const std::vector<double>& vx) {
  SparseMatrix a(nrows, ncols);
  std::vector<idx> count(nrows, 0);
  for (idx r : ri) ++count[r];
  for (idx i = 0; i < nrows; ++i) a.row_ptr[i + 1] = a.row_ptr[i] + count[i];
  a.col_idx.resize(ri.size());
  a.values.resize(ri.size());
  std::vector<idx> next(a.row_ptr.begin(), a.row_ptr.end() - 1);
  for (idx j = 0; j < ncols; ++j) {
    for (idx p = cp[j]; p < cp[j + 1]; ++p) {
      const idx q = next[ri[p]]++;
      a.col_idx[q] = j;
      a.values[q] = vx[p];
    }
  }
  return a;
}

}  // namespace

SymbolicPlan symbolic(const SparseMatrix& a) {
  if (a.nrows != a.ncols) throw DimensionError("symbolic: square input required");
  const idx n = a.ncols;
  SymbolicPlan plan;
  plan.col_perm = min_degree_order(a);
  if (n == 0) return plan;

  // the column etree is invariant under row permutations of a
  std::vector<idx> row_id(n);
  for (idx i = 0; i < n; ++i) row_id[i] = i;
  plan.etree = column_etree(permuted(a, row_id, plan.col_perm));

  // Fill estimate assuming diagonal pivots, so rows follow the column order:
  // Cholesky counts of the symmetric closure pattern(ap + ap^T + I), L and U
  // counted, diagonal once.
  SparseMatrix ap = permuted(a, plan.col_perm, plan.col_perm);
  SparseMatrix s = add(add(ap, transpose(ap)), SparseMatrix::identity(n));
  std::vector<idx> sym_parent = etree_symmetric(s);
  // upper triangle rows
  SparseMatrix upper(n, n);
  for (idx i = 0; i < n; ++i) {
    for (idx p = s.row_ptr[i]; p < s.row_ptr[i + 1]; ++p)
      if (s.col_idx[p] >= i) {
        upper.col_idx.push_back(s.col_idx[p]);
        upper.values.push_back(0.0);
      }
    upper.row_ptr[i + 1] = upper.nnz();
  }
  const std::vector<idx> post = etree_postorder(sym_parent);
  const std::vector<idx> counts = cholesky_col_counts(upper, sym_parent, post);
  idx cnz = 0;
  for (idx c : counts) cnz += c;
  plan.predicted_fill = 2 * cnz - n;
  return plan;
}

LuFactors factorize(const SparseMatrix& a, const SymbolicPlan& plan, double pivot_tol) {
  if (a.nrows != a.ncols) throw DimensionError("factorize: square input required");
  const idx n = a.nrows;
  if (static_cast<idx>(plan.col_perm.size()) != n)
    throw DimensionError("factorize: plan does not match matrix");
  pivot_tol = std::clamp(pivot_tol, 0.0, 1.0);

  SparseMatrix at = transpose(a);  // row c of at = column c of a

  std::vector<idx> lp(n + 1, 0), up(n + 1, 0);
  std::vector<idx> li, ui;
  std::vector<double> lx, ux;
  const std::size_t reserve = std::min<std::size_t>(4 * a.col_idx.size() + n, std::size_t{1} << 27);
  li.reserve(reserve);
  lx.reserve(reserve);
  ui.reserve(reserve);
  ux.reserve(reserve);

  std::vector<idx> pinv(n, -1), rperm(n, -1);
  std::vector<double> x(n, 0.0);
  std::vector<idx> xi, stack, pstack;
  std::vector<idx> visited(n, -1);

  const double maxa = max_abs(a);
  double maxseen = 0.0;

  for (idx j = 0; j < n; ++j) {
    const idx cq = plan.col_perm[j];

    // reach of column cq through the graph of finished L columns, postorder
    xi.clear();
    for (idx p = at.row_ptr[cq]; p < at.row_ptr[cq + 1]; ++p) {
      const idx start = at.col_idx[p];
      if (visited[start] == j) continue;
      stack.assign(1, start);
      pstack.assign(1, -1);
      while (!stack.empty()) {
        const idx r = stack.back();
        if (visited[r] != j) {
          visited[r] = j;
          pstack.back() = pinv[r] == -1 ? -1 : lp[pinv[r]];
        }
        bool done = true;
        if (pinv[r] != -1) {
          for (idx q = pstack.back(); q < lp[pinv[r] + 1]; ++q) {
            const idx child = li[q];
            if (visited[child] != j) {
              pstack.back() = q + 1;
              stack.push_back(child);
              pstack.push_back(-1);
              done = false;
              break;
            }
          }
        }
        if (done) {
          xi.push_back(r);
          stack.pop_back();
          pstack.pop_back();
        }
      }
    }

    // numeric: scatter the column, then apply updates in topological order
    for (idx p = at.row_ptr[cq]; p < at.row_ptr[cq + 1]; ++p) x[at.col_idx[p]] = at.values[p];
    for (auto it = xi.rbegin(); it != xi.rend(); ++it) {
      const idx r = *it;
      const idx k = pinv[r];
      if (k == -1) continue;
      const double xk = x[r];
      if (xk == 0.0) continue;
      for (idx q = lp[k] + 1; q < lp[k + 1]; ++q) x[li[q]] -= lx[q] * xk;  // skip unit diag
    }

    // threshold partial pivoting with diagonal preference
    double colmax = 0.0;
    for (idx r : xi) {
      const double v = std::fabs(x[r]);
      maxseen = std::max(maxseen, v);
      if (pinv[r] == -1) colmax = std::max(colmax, v);
    }
    if (colmax == 0.0) {
      throw SingularMatrixError("factorize: no pivot available in column " + std::to_string(cq) +
                                " (step " + std::to_string(j) + ")");
    }
    if (maxa > 0.0 && maxseen > kGrowthLimit * maxa)
      throw NumericalInstabilityError("factorize: growth factor exceeded 1e12");

    idx ipiv = -1;
    if (visited[cq] == j && pinv[cq] == -1 && std::fabs(x[cq]) >= pivot_tol * colmax) {
      ipiv = cq;
    } else {
      double best = -1.0;
      for (idx r : xi) {
        if (pinv[r] != -1) continue;
        const double v = std::fabs(x[r]);
        if (v > best) {
          best = v;
          ipiv = r;
        }
      }
    }
    const double piv = x[ipiv];
    pinv[ipiv] = j;
    rperm[j] = ipiv;

    li.push_back(ipiv);
    lx.push_back(1.0);
    for (idx r : xi) {
      const idx k = pinv[r];
      if (k != -1 && k < j) {
        ui.push_back(k);
        ux.push_back(x[r]);
      } else if (k == -1) {
        li.push_back(r);
        lx.push_back(x[r] / piv);
      }
      x[r] = 0.0;
    }
    ui.push_back(j);
    ux.push_back(piv);
    lp[j + 1] = static_cast<idx>(li.size());
    up[j + 1] = static_cast<idx>(ui.size());
  }

  for (idx& r : li) r = pinv[r];

  LuFactors f;
  f.l = csc_to_csr(n, n, lp, li, lx);
  f.u = csc_to_csr(n, n, up, ui, ux);
  f.row_perm = std::move(rperm);
  f.col_perm = plan.col_perm;
  f.growth = maxa > 0.0 ? maxseen / maxa : 1.0;
  return f;
}

DenseVector lu_solve(const LuFactors& f, const DenseVector& b) {
  const idx n = f.l.nrows;
  if (static_cast<idx>(b.size()) != n) throw DimensionError("lu_solve: length mismatch");
  DenseVector y(n);
  for (idx k = 0; k < n; ++k) y[k] = b[f.row_perm[k]];
  for (idx i = 0; i < n; ++i) {
    double s = y[i];
    for (idx p = f.l.row_ptr[i]; p < f.l.row_ptr[i + 1]; ++p) {
      const idx c = f.l.col_idx[p];
      if (c != i) s -= f.l.values[p] * y[c];
    }
    y[i] = s;
  }
  for (idx i = n - 1; i >= 0; --i) {
    double s = y[i];
    double diag = 0.0;
    for (idx p = f.u.row_ptr[i]; p < f.u.row_ptr[i + 1]; ++p) {
      const idx c = f.u.col_idx[p];
      if (c == i)
        diag = f.u.values[p];
      else
        s -= f.u.values[p] * y[c];
    }
    y[i] = s / diag;
  }
  DenseVector out(n);
  for (idx j = 0; j < n; ++j) out[f.col_perm[j]] = y[j];
  return out;
}

DenseVector lu_solve_transpose(const LuFactors& f, const DenseVector& b) {
  const idx n = f.l.nrows;
  if (static_cast<idx>(b.size()) != n) throw DimensionError("lu_solve_transpose: length mismatch");
  DenseVector y(n);
  for (idx j = 0; j < n; ++j) y[j] = b[f.col_perm[j]];
  // U^T y = c, saxpy over the rows of U ascending
  for (idx r = 0; r < n; ++r) {
    double diag = 0.0;
    for (idx p = f.u.row_ptr[r]; p < f.u.row_ptr[r + 1]; ++p)
      if (f.u.col_idx[p] == r) diag = f.u.values[p];
    y[r] /= diag;
    const double yr = y[r];
    for (idx p = f.u.row_ptr[r]; p < f.u.row_ptr[r + 1]; ++p) {
      const idx c = f.u.col_idx[p];
      if (c != r) y[c] -= f.u.values[p] * yr;
    }
  }
  // L^T z = y, saxpy over the rows of L descending (unit diagonal)
  for (idx r = n - 1; r >= 0; --r) {
    const double zr = y[r];
    for (idx p = f.l.row_ptr[r]; p < f.l.row_ptr[r + 1]; ++p) {
      const idx c = f.l.col_idx[p];
      if (c != r) y[c] -= f.l.values[p] * zr;
    }
  }
  DenseVector out(n);
  for (idx k = 0; k < n; ++k) out[f.row_perm[k]] = y[k];
  return out;
}

DenseVector sparse_lu_solve(const SparseMatrix& a, const DenseVector& b, double pivot_tol) {
  const SymbolicPlan plan = symbolic(a);
  const LuFactors f = factorize(a, plan, pivot_tol);
  return lu_solve(f, b);
}

DenseVector dense_oracle_solve(const SparseMatrix& a, const DenseVector& b) {
  if (a.nrows != a.ncols) throw DimensionError("dense_oracle_solve: square input required");
  if (static_cast<idx>(b.size()) != a.nrows)
    throw DimensionError("dense_oracle_solve: length mismatch");
  if (a.nrows > 2000) throw DeskScaleOnlyError("dense_oracle_solve: n > 2000");
  DenseMatrix m = dense_from_sparse(a);
  std::vector<idx> piv;
  if (!dense_lu_factor(m, piv)) throw SingularMatrixError("dense_oracle_solve: singular matrix");
  return dense_lu_solve_factored(m, piv, b);
}

}  // namespace densepre
