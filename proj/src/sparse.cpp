#include "densepre/sparse.hpp"

#include <algorithm>
#include <cmath>

namespace densepre {

SparseMatrix SparseMatrix::identity(idx n) {
  SparseMatrix a(n, n);
  a.col_idx.resize(n);
  a.values.assign(n, 1.0);
  for (idx i = 0; i < n; ++i) {
    a.row_ptr[i + 1] = i + 1;
    a.col_idx[i] = i;
  }
  return a;
}

void check_invariants(const SparseMatrix& a) {
  if (a.nrows < 0 || a.ncols < 0) throw DimensionError("negative matrix dimension");
  if (static_cast<idx>(a.row_ptr.size()) != a.nrows + 1) throw DimensionError("row_ptr length mismatch");
  if (a.row_ptr[0] != 0) throw DimensionError("row_ptr[0] != 0");
  if (a.row_ptr[a.nrows] != a.nnz()) throw DimensionError("row_ptr[nrows] != nnz");
  if (a.col_idx.size() != a.values.size()) throw DimensionError("col_idx/values length mismatch");
  for (idx i = 0; i < a.nrows; ++i) {
    if (a.row_ptr[i] > a.row_ptr[i + 1]) throw DimensionError("row_ptr not nondecreasing");
    for (idx p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) {
      if (a.col_idx[p] < 0 || a.col_idx[p] >= a.ncols) throw IndexError("column index out of range");
      if (p > a.row_ptr[i] && a.col_idx[p - 1] >= a.col_idx[p])
        throw IndexError("column indices not strictly increasing within row");
    }
  }
}

SparseMatrix from_triplets(const Triplets& t) {
  for (const Triplet& e : t.entries) {
    if (e.row < 0 || e.row >= t.nrows || e.col < 0 || e.col >= t.ncols)
      throw IndexError("triplet (" + std::to_string(e.row) + ", " + std::to_string(e.col) +
                       ") out of range for " + std::to_string(t.nrows) + " x " +
                       std::to_string(t.ncols));
  }
  SparseMatrix a(t.nrows, t.ncols);
  std::vector<idx> count(t.nrows, 0);
  for (const Triplet& e : t.entries) ++count[e.row];
  std::vector<idx> start(t.nrows + 1, 0);
  for (idx i = 0; i < t.nrows; ++i) start[i + 1] = start[i] + count[i];

  std::vector<std::pair<idx, double>> work(t.entries.size());
  std::vector<idx> fill = start;
  for (const Triplet& e : t.entries) work[fill[e.row]++] = {e.col, e.value};

  a.col_idx.reserve(t.entries.size());
  a.values.reserve(t.entries.size());
  for (idx i = 0; i < t.nrows; ++i) {
    auto first = work.begin() + start[i];
    auto last = work.begin() + start[i + 1];
    std::sort(first, last);  // (col, value) order makes duplicate sums canonical
    for (auto it = first; it != last;) {
      const idx col = it->first;
      double sum = 0.0;
      for (; it != last && it->first == col; ++it) sum += it->second;
      a.col_idx.push_back(col);
      a.values.push_back(sum);
    }
    a.row_ptr[i + 1] = a.nnz();
  }
  return a;
}

SparseMatrix transpose(const SparseMatrix& a) {
  SparseMatrix at(a.ncols, a.nrows);
  std::vector<idx> count(a.ncols, 0);
  for (idx c : a.col_idx) ++count[c];
  for (idx j = 0; j < a.ncols; ++j) at.row_ptr[j + 1] = at.row_ptr[j] + count[j];
  at.col_idx.resize(a.nnz());
  at.values.resize(a.nnz());
  std::vector<idx> next(at.row_ptr.begin(), at.row_ptr.end() - 1);
  for (idx i = 0; i < a.nrows; ++i) {
    for (idx p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) {
      const idx q = next[a.col_idx[p]]++;
      at.col_idx[q] = i;
      at.values[q] = a.values[p];
    }
  }
  return at;
}

SparseMatrix spgemm(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.ncols != b.nrows)
    throw DimensionError("spgemm: inner dimensions " + std::to_string(a.ncols) + " and " +
                         std::to_string(b.nrows) + " do not match");
  SparseMatrix c(a.nrows, b.ncols);
  std::vector<double> acc(b.ncols, 0.0);
  std::vector<idx> mark(b.ncols, -1);
  std::vector<idx> cols;
  for (idx i = 0; i < a.nrows; ++i) {
    cols.clear();
    for (idx p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) {
      const idx k = a.col_idx[p];
      const double av = a.values[p];
      for (idx q = b.row_ptr[k]; q < b.row_ptr[k + 1]; ++q) {
        const idx j = b.col_idx[q];
        if (mark[j] != i) {
          mark[j] = i;
          acc[j] = 0.0;
          cols.push_back(j);
        }
        acc[j] += av * b.values[q];
      }
    }
    std::sort(cols.begin(), cols.end());
    for (idx j : cols) {
      c.col_idx.push_back(j);
      c.values.push_back(acc[j]);
    }
    c.row_ptr[i + 1] = c.nnz();
  }
  return c;
}

DenseVector spmv(const SparseMatrix& a, const DenseVector& x) {
  if (static_cast<idx>(x.size()) != a.ncols) throw DimensionError("spmv: vector length mismatch");
  DenseVector y(a.nrows, 0.0);
  for (idx i = 0; i < a.nrows; ++i) {
    double s = 0.0;
    for (idx p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) s += a.values[p] * x[a.col_idx[p]];
    y[i] = s;
  }
  return y;
}

DenseVector spmv_transpose(const SparseMatrix& a, const DenseVector& x) {
  if (static_cast<idx>(x.size()) != a.nrows)
    throw DimensionError("spmv_transpose: vector length mismatch");
  DenseVector y(a.ncols, 0.0);
  for (idx i = 0; i < a.nrows; ++i) {
    const double xi = x[i];
    for (idx p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) y[a.col_idx[p]] += a.values[p] * xi;
  }
  return y;
}

SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.nrows != b.nrows || a.ncols != b.ncols) throw DimensionError("add: shape mismatch");
  SparseMatrix c(a.nrows, a.ncols);
  c.col_idx.reserve(a.nnz() + b.nnz());
  c.values.reserve(a.nnz() + b.nnz());
  for (idx i = 0; i < a.nrows; ++i) {
    idx p = a.row_ptr[i], pe = a.row_ptr[i + 1];
    idx q = b.row_ptr[i], qe = b.row_ptr[i + 1];
    while (p < pe || q < qe) {
      idx ca = p < pe ? a.col_idx[p] : a.ncols;
      idx cb = q < qe ? b.col_idx[q] : a.ncols;
      if (ca < cb) {
        c.col_idx.push_back(ca);
        c.values.push_back(a.values[p++]);
      } else if (cb < ca) {
        c.col_idx.push_back(cb);
        c.values.push_back(b.values[q++]);
      } else {
        c.col_idx.push_back(ca);
        c.values.push_back(a.values[p++] + b.values[q++]);
      }
    }
    c.row_ptr[i + 1] = c.nnz();
  }
  return c;
}

SparseMatrix prune(const SparseMatrix& a, double eps) {
  SparseMatrix c(a.nrows, a.ncols);
  for (idx i = 0; i < a.nrows; ++i) {
    for (idx p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) {
      if (std::fabs(a.values[p]) > eps) {
        c.col_idx.push_back(a.col_idx[p]);
        c.values.push_back(a.values[p]);
      }
    }
    c.row_ptr[i + 1] = c.nnz();
  }
  return c;
}

SparseMatrix hcat(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.nrows != b.nrows) throw DimensionError("hcat: row count mismatch");
  SparseMatrix c(a.nrows, a.ncols + b.ncols);
  c.col_idx.reserve(a.nnz() + b.nnz());
  c.values.reserve(a.nnz() + b.nnz());
  for (idx i = 0; i < a.nrows; ++i) {
    for (idx p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) {
      c.col_idx.push_back(a.col_idx[p]);
      c.values.push_back(a.values[p]);
    }
    for (idx p = b.row_ptr[i]; p < b.row_ptr[i + 1]; ++p) {
      c.col_idx.push_back(b.col_idx[p] + a.ncols);
      c.values.push_back(b.values[p]);
    }
    c.row_ptr[i + 1] = c.nnz();
  }
  return c;
}

SparseMatrix vcat(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.ncols != b.ncols) throw DimensionError("vcat: column count mismatch");
  SparseMatrix c(a.nrows + b.nrows, a.ncols);
  c.col_idx = a.col_idx;
  c.values = a.values;
  c.col_idx.insert(c.col_idx.end(), b.col_idx.begin(), b.col_idx.end());
  c.values.insert(c.values.end(), b.values.begin(), b.values.end());
  for (idx i = 0; i < a.nrows; ++i) c.row_ptr[i + 1] = a.row_ptr[i + 1];
  for (idx i = 0; i < b.nrows; ++i) c.row_ptr[a.nrows + i + 1] = a.nnz() + b.row_ptr[i + 1];
  return c;
}

SparseMatrix slice_rows(const SparseMatrix& a, idx begin, idx end) {
  if (begin < 0 || end > a.nrows || begin > end) throw IndexError("slice_rows: bad range");
  SparseMatrix c(end - begin, a.ncols);
  const idx p0 = a.row_ptr[begin];
  const idx p1 = a.row_ptr[end];
  c.col_idx.assign(a.col_idx.begin() + p0, a.col_idx.begin() + p1);
  c.values.assign(a.values.begin() + p0, a.values.begin() + p1);
  for (idx i = begin; i < end; ++i) c.row_ptr[i - begin + 1] = a.row_ptr[i + 1] - p0;
  return c;
}

SparseMatrix scaled(const SparseMatrix& a, double s) {
  SparseMatrix c = a;
  for (double& v : c.values) v *= s;
  return c;
}

SparseMatrix extract_row(const SparseMatrix& a, idx i) {
  if (i < 0 || i >= a.nrows) throw IndexError("extract_row: row out of range");
  return slice_rows(a, i, i + 1);
}

SparseMatrix permuted(const SparseMatrix& a, const std::vector<idx>& row_perm,
                      const std::vector<idx>& col_perm) {
  if (static_cast<idx>(row_perm.size()) != a.nrows || static_cast<idx>(col_perm.size()) != a.ncols)
    throw DimensionError("permuted: permutation length mismatch");
  std::vector<idx> col_inv(a.ncols);
  for (idx j = 0; j < a.ncols; ++j) col_inv[col_perm[j]] = j;
  SparseMatrix c(a.nrows, a.ncols);
  c.col_idx.reserve(a.nnz());
  c.values.reserve(a.nnz());
  std::vector<std::pair<idx, double>> row;
  for (idx i = 0; i < a.nrows; ++i) {
    const idx r = row_perm[i];
    row.clear();
    for (idx p = a.row_ptr[r]; p < a.row_ptr[r + 1]; ++p)
      row.emplace_back(col_inv[a.col_idx[p]], a.values[p]);
    std::sort(row.begin(), row.end());
    for (auto& [c2, v] : row) {
      c.col_idx.push_back(c2);
      c.values.push_back(v);
    }
    c.row_ptr[i + 1] = c.nnz();
  }
  return c;
}

double max_abs(const SparseMatrix& a) {
  double m = 0.0;
  for (double v : a.values) m = std::max(m, std::fabs(v));
  return m;
}

}  // namespace densepre
