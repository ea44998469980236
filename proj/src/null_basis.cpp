#include "densepre/null_basis.hpp"

#include <algorithm>
#include <cmath>

#include "densepre/kernels.hpp"
#include "densepre/lu.hpp"
#include "densepre/sparse.hpp"

namespace densepre {

namespace {

std::vector<std::pair<idx, double>> numerical_nonzeros(const SparseMatrix& b_row, double eps) {
  std::vector<std::pair<idx, double>> nz;
  for (idx p = b_row.row_ptr[0]; p < b_row.row_ptr[1]; ++p)
    if (std::fabs(b_row.values[p]) > eps) nz.emplace_back(b_row.col_idx[p], b_row.values[p]);
  return nz;
}

void normalize_basis_columns(SparseMatrix& z) {
  std::vector<double> norm2(z.ncols, 0.0);
  for (idx p = 0; p < z.nnz(); ++p) norm2[z.col_idx[p]] += z.values[p] * z.values[p];
  for (double& s : norm2) s = s > 0.0 ? std::sqrt(s) : 1.0;
  for (idx p = 0; p < z.nnz(); ++p) z.values[p] /= norm2[z.col_idx[p]];
}

}  // namespace

NullBasis construct_single(const SparseMatrix& b_row, const BasisOptions& opt) {
  if (b_row.nrows != 1) throw DimensionError("construct_single: expected a single row");
  const idx n = b_row.ncols;
  if (n < 2) throw DimensionError("construct_single: n >= 2 required");
  const auto nz = numerical_nonzeros(b_row, opt.eps);
  if (nz.empty()) throw ZeroRowError("construct_single: row has no entry above eps");

  const idx last = nz.back().first;
  // the column for index i sits at i for i < last and i - 1 afterwards
  const auto col_of = [last](idx i) { return i < last ? i : i - 1; };

  NullBasis basis;
  basis.kind = BasisKind::bidiagonal_alg3;
  basis.pivot_ratios.reserve(nz.size() > 0 ? nz.size() - 1 : 0);

  SparseMatrix z(n, n - 1);
  z.col_idx.reserve(n + static_cast<idx>(nz.size()) - 2);
  z.values.reserve(n + static_cast<idx>(nz.size()) - 2);

  std::size_t t = 0;  // pair whose successor is the next nonzero
  for (idx i = 0; i < n; ++i) {
    if (t + 1 < nz.size() && i == nz[t + 1].first) {
      // i closes the pair (nz[t], nz[t+1])
      const double ratio = -(nz[t].second / nz[t + 1].second);
      basis.pivot_ratios.push_back(ratio);
      z.col_idx.push_back(col_of(nz[t].first));
      z.values.push_back(ratio);
      ++t;
    }
    if (i != last) {
      z.col_idx.push_back(col_of(i));
      z.values.push_back(1.0);
    }
    z.row_ptr[i + 1] = z.nnz();
  }

  for (double r : basis.pivot_ratios)
    basis.max_abs_ratio = std::max(basis.max_abs_ratio, std::fabs(r));
  if (opt.normalize_columns) normalize_basis_columns(z);
  basis.z = std::move(z);
  return basis;
}

NullBasis construct_multi(const SparseMatrix& b, const BasisOptions& opt) {
  const idx m = b.nrows;
  const idx n = b.ncols;
  if (m < 1) throw DimensionError("construct_multi: at least one row required");
  if (m >= n) throw DimensionError("construct_multi: m < n required");

  NullBasis acc = construct_single(slice_rows(b, 0, 1), opt);
  for (idx i = 1; i < m; ++i) {
    const SparseMatrix reduced_row = spgemm(slice_rows(b, i, i + 1), acc.z);
    NullBasis stage;
    try {
      stage = construct_single(reduced_row, opt);
    } catch (const ZeroRowError&) {
      throw RankDeficiencyError("construct_multi: row " + std::to_string(i) +
                                " is numerically zero against the previous basis");
    }
    acc.z = spgemm(acc.z, stage.z);
    acc.pivot_ratios.insert(acc.pivot_ratios.end(), stage.pivot_ratios.begin(),
                            stage.pivot_ratios.end());
    acc.max_abs_ratio = std::max(acc.max_abs_ratio, stage.max_abs_ratio);
  }
  acc.kind = m == 1 ? BasisKind::bidiagonal_alg3 : BasisKind::nested_alg4;
  return acc;
}

NullBasis fundamental_basis(const SparseMatrix& b_row, idx pivot) {
  if (b_row.nrows != 1) throw DimensionError("fundamental_basis: expected a single row");
  const idx n = b_row.ncols;
  if (n < 2) throw DimensionError("fundamental_basis: n >= 2 required");
  if (pivot < 0 || pivot >= n) throw IndexError("fundamental_basis: pivot out of range");

  double bp = 0.0;
  for (idx p = b_row.row_ptr[0]; p < b_row.row_ptr[1]; ++p)
    if (b_row.col_idx[p] == pivot) bp = b_row.values[p];
  if (bp == 0.0) throw ZeroPivotError("fundamental_basis: zero pivot entry");

  std::vector<double> dense(n, 0.0);
  for (idx p = b_row.row_ptr[0]; p < b_row.row_ptr[1]; ++p)
    dense[b_row.col_idx[p]] = b_row.values[p];

  NullBasis basis;
  basis.kind = BasisKind::fundamental_eq13;
  Triplets t(n, n - 1);
  idx col = 0;
  for (idx j = 0; j < n; ++j) {
    if (j == pivot) continue;
    t.add(j, col, 1.0);
    if (dense[j] != 0.0) {
      const double ratio = -(dense[j] / bp);
      basis.pivot_ratios.push_back(ratio);
      t.add(pivot, col, ratio);
    }
    ++col;
  }
  for (double r : basis.pivot_ratios)
    basis.max_abs_ratio = std::max(basis.max_abs_ratio, std::fabs(r));
  basis.z = from_triplets(t);
  return basis;
}

InflationStats inflation_stats(const SparseMatrix& a, const NullBasis& z1, const NullBasis& z2,
                               idx nnz_m) {
  if (z1.z.nrows != a.nrows || z2.z.nrows != a.ncols)
    throw DimensionError("inflation_stats: basis dimensions do not conform with a");
  if (nnz_m <= 0) throw InvalidArgumentError("inflation_stats: nnz_m must be positive");
  const SparseMatrix reduced = spgemm(spgemm(transpose(z1.z), a), z2.z);
  InflationStats s;
  s.nnz_reduced = reduced.nnz();
  s.infl = static_cast<double>(s.nnz_reduced) / static_cast<double>(nnz_m);
  if (z1.kind == BasisKind::bidiagonal_alg3 && z2.kind == BasisKind::bidiagonal_alg3 &&
      s.nnz_reduced > 4 * a.nnz())
    throw Error("inflation_stats: structural bound nnz(z1^T a z2) <= 4 nnz(a) violated");
  return s;
}

double sigma1_upper_bound(const NullBasis& z) {
  if (z.kind != BasisKind::bidiagonal_alg3)
    throw UnsupportedBasisKindError("sigma1_upper_bound: bidiagonal basis required");
  return 1.0 + z.max_abs_ratio;
}

double condest_ztz(const NullBasis& zb) {
  const SparseMatrix ztz = spgemm(transpose(zb.z), zb.z);
  const idx n = ztz.nrows;
  if (n == 0) return 1.0;

  std::vector<double> colsum(n, 0.0);
  for (idx p = 0; p < ztz.nnz(); ++p) colsum[ztz.col_idx[p]] += std::fabs(ztz.values[p]);
  const double norm1 = kernels::inf_norm(colsum.data(), n);

  LuFactors f;
  try {
    f = factorize(ztz, symbolic(ztz), 0.1);
  } catch (const SingularMatrixError& e) {
    throw SingularityError(std::string("condest_ztz: ") + e.what());
  } catch (const NumericalInstabilityError& e) {
    throw SingularityError(std::string("condest_ztz: ") + e.what());
  }

  // Hager's estimator for ||(z^T z)^{-1}||_1
  DenseVector x(n, 1.0 / static_cast<double>(n));
  double est = 0.0;
  idx last_j = -1;
  for (int it = 0; it < 5; ++it) {
    const DenseVector y = lu_solve(f, x);
    est = kernels::one_norm(y);
    DenseVector xi(n);
    for (idx i = 0; i < n; ++i) xi[i] = y[i] >= 0.0 ? 1.0 : -1.0;
    const DenseVector w = lu_solve_transpose(f, xi);
    idx j = 0;
    double wmax = -1.0;
    for (idx i = 0; i < n; ++i) {
      if (std::fabs(w[i]) > wmax) {
        wmax = std::fabs(w[i]);
        j = i;
      }
    }
    if (wmax <= kernels::dot(w, x) || j == last_j) break;
    x.assign(n, 0.0);
    x[j] = 1.0;
    last_j = j;
  }
  return std::max(1.0, norm1 * est);
}

}  // namespace densepre
