#include "densepre/graph.hpp"

#include <algorithm>
#include <cmath>

#include "densepre/sparse.hpp"

namespace densepre {

ProductNnz predict_product_nnz(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.ncols != b.nrows) throw DimensionError("predict_product_nnz: inner dimension mismatch");
  ProductNnz r;
  r.row_counts.assign(a.nrows, 0);
  std::vector<idx> mark(b.ncols, -1);
  for (idx i = 0; i < a.nrows; ++i) {
    idx count = 0;
    for (idx p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) {
      const idx k = a.col_idx[p];
      for (idx q = b.row_ptr[k]; q < b.row_ptr[k + 1]; ++q) {
        if (mark[b.col_idx[q]] != i) {
          mark[b.col_idx[q]] = i;
          ++count;
        }
      }
    }
    r.row_counts[i] = count;
    r.total += count;
  }
  return r;
}

DensityReport detect_dense_rows(const SparseMatrix& a) {
  DensityReport rep;
  rep.row_threshold = static_cast<idx>(std::ceil(10.0 * std::sqrt(static_cast<double>(a.ncols))));
  rep.col_threshold = static_cast<idx>(std::ceil(10.0 * std::sqrt(static_cast<double>(a.nrows))));
  for (idx i = 0; i < a.nrows; ++i)
    if (a.row_nnz(i) > rep.row_threshold) rep.dense_rows.push_back(i);
  std::vector<idx> col_nnz(a.ncols, 0);
  for (idx c : a.col_idx) ++col_nnz[c];
  for (idx j = 0; j < a.ncols; ++j)
    if (col_nnz[j] > rep.col_threshold) rep.dense_cols.push_back(j);
  return rep;
}

namespace {

idx tree_height(const std::vector<idx>& parent) {
  const idx n = static_cast<idx>(parent.size());
  if (n == 0) return 0;
  std::vector<idx> depth(n, 0);
  idx h = 1;
  // parent[j] > j, so a reverse sweep sees parents before children
  for (idx j = n - 1; j >= 0; --j) {
    depth[j] = parent[j] == -1 ? 1 : depth[parent[j]] + 1;
    h = std::max(h, depth[j]);
  }
  return h;
}

}  // namespace

EliminationTree column_etree(const SparseMatrix& a) {
  const idx n = a.ncols;
  const idx m = a.nrows;
  EliminationTree t;
  t.parent.assign(n, -1);
  // row k of a^T is column k of a
  SparseMatrix at = transpose(a);
  std::vector<idx> ancestor(n, -1), prev_col(m, -1);
  for (idx k = 0; k < n; ++k) {
    for (idx p = at.row_ptr[k]; p < at.row_ptr[k + 1]; ++p) {
      const idx row = at.col_idx[p];
      idx i = prev_col[row];
      while (i != -1 && i < k) {
        const idx inext = ancestor[i];
        ancestor[i] = k;
        if (inext == -1) t.parent[i] = k;
        i = inext;
      }
      prev_col[row] = k;
    }
  }
  t.height = tree_height(t.parent);
  return t;
}

std::vector<idx> etree_symmetric(const SparseMatrix& a) {
  const idx n = a.ncols;
  std::vector<idx> parent(n, -1), ancestor(n, -1);
  for (idx k = 0; k < n; ++k) {
    for (idx p = a.row_ptr[k]; p < a.row_ptr[k + 1]; ++p) {
      idx i = a.col_idx[p];
      while (i != -1 && i < k) {
        const idx inext = ancestor[i];
        ancestor[i] = k;
        if (inext == -1) parent[i] = k;
        i = inext;
      }
    }
  }
  return parent;
}

std::vector<idx> etree_postorder(const std::vector<idx>& parent) {
  const idx n = static_cast<idx>(parent.size());
  std::vector<idx> head(n, -1), next(n, -1), stack;
  for (idx j = n - 1; j >= 0; --j) {
    if (parent[j] == -1) continue;
    next[j] = head[parent[j]];
    head[parent[j]] = j;
  }
  std::vector<idx> post;
  post.reserve(n);
  for (idx r = 0; r < n; ++r) {
    if (parent[r] != -1) continue;
    stack.push_back(r);
    while (!stack.empty()) {
      const idx p = stack.back();
      const idx child = head[p];
      if (child == -1) {
        post.push_back(p);
        stack.pop_back();
      } else {
        head[p] = next[child];
        stack.push_back(child);
      }
    }
  }
  return post;
}

namespace {

// Skeleton leaf test (Gilbert-Ng-Peyton). Returns the least common ancestor
// of j and the previous leaf of subtree i when j is a subsequent leaf.
idx skeleton_leaf(idx i, idx j, const std::vector<idx>& first, std::vector<idx>& maxfirst,
                  std::vector<idx>& prevleaf, std::vector<idx>& ancestor, int& jleaf) {
  jleaf = 0;
  if (i <= j || first[j] <= maxfirst[i]) return -1;
  maxfirst[i] = first[j];
  const idx jprev = prevleaf[i];
  prevleaf[i] = j;
  jleaf = jprev == -1 ? 1 : 2;
  if (jleaf == 1) return i;
  idx q = jprev;
  while (q != ancestor[q]) q = ancestor[q];
  for (idx s = jprev; s != q;) {
    const idx sparent = ancestor[s];
    ancestor[s] = q;
    s = sparent;
  }
  return q;
}

std::vector<idx> col_counts_impl(const SparseMatrix& a, const std::vector<idx>& parent,
                                 const std::vector<idx>& post, bool ata) {
  const idx n = a.ncols;
  const idx m = a.nrows;
  std::vector<idx> counts(n, 0);
  std::vector<idx>& delta = counts;
  std::vector<idx> first(n, -1), maxfirst(n, -1), prevleaf(n, -1), ancestor(n);

  for (idx k = 0; k < n; ++k) {
    idx j = post[k];
    delta[j] = first[j] == -1 ? 1 : 0;
    for (; j != -1 && first[j] == -1; j = parent[j]) first[j] = k;
  }

  // For the a^T a case, row i of a is processed at the smallest postorder
  // position among its columns.
  std::vector<idx> head, next;
  if (ata) {
    std::vector<idx> inv_post(n);
    for (idx k = 0; k < n; ++k) inv_post[post[k]] = k;
    head.assign(n + 1, -1);
    next.assign(m, -1);
    for (idx i = 0; i < m; ++i) {
      idx kmin = n;
      for (idx p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p)
        kmin = std::min(kmin, inv_post[a.col_idx[p]]);
      next[i] = head[kmin];
      head[kmin] = i;
    }
  }

  for (idx i = 0; i < n; ++i) ancestor[i] = i;
  for (idx k = 0; k < n; ++k) {
    const idx j = post[k];
    if (parent[j] != -1) --delta[parent[j]];
    for (idx walk = ata ? head[k] : j; walk != -1; walk = ata ? next[walk] : -1) {
      for (idx p = a.row_ptr[walk]; p < a.row_ptr[walk + 1]; ++p) {
        int jleaf = 0;
        const idx q =
            skeleton_leaf(a.col_idx[p], j, first, maxfirst, prevleaf, ancestor, jleaf);
        if (jleaf >= 1) ++delta[j];
        if (jleaf == 2) --delta[q];
      }
    }
    if (parent[j] != -1) ancestor[j] = parent[j];
  }
  for (idx j = 0; j < n; ++j)
    if (parent[j] != -1) counts[parent[j]] += counts[j];
  return counts;
}

}  // namespace

std::vector<idx> cholesky_col_counts_ata(const SparseMatrix& a, const std::vector<idx>& parent,
                                         const std::vector<idx>& post) {
  return col_counts_impl(a, parent, post, true);
}

std::vector<idx> cholesky_col_counts(const SparseMatrix& upper, const std::vector<idx>& parent,
                                     const std::vector<idx>& post) {
  return col_counts_impl(upper, parent, post, false);
}

idx householder_vnz(const SparseMatrix& a, const std::vector<idx>& parent) {
  const idx n = a.ncols;
  const idx m = a.nrows;
  std::vector<idx> head(n, -1), tail(n, -1), nque(n, 0), next(m, -1);
  // leftmost column of each row; rows are sorted so this is the first entry
  for (idx i = m - 1; i >= 0; --i) {
    if (a.row_ptr[i] == a.row_ptr[i + 1]) continue;
    const idx k = a.col_idx[a.row_ptr[i]];
    if (nque[k]++ == 0) tail[k] = i;
    next[i] = head[k];
    head[k] = i;
  }
  idx vnz = 0;
  for (idx k = 0; k < n; ++k) {
    const idx i = head[k];
    ++vnz;  // V(k,k), a fictitious row when the queue is empty
    if (i < 0) continue;
    if (--nque[k] <= 0) continue;
    vnz += nque[k];
    const idx pa = parent[k];
    if (pa != -1) {
      if (nque[pa] == 0) tail[pa] = tail[k];
      next[tail[k]] = head[pa];
      head[pa] = next[i];
      nque[pa] += nque[k];
    }
  }
  return vnz;
}

idx symbolic_fill_bound(const SparseMatrix& a) {
  if (a.nrows != a.ncols) throw DimensionError("symbolic_fill_bound: square input required");
  const idx n = a.ncols;
  if (n == 0) return 0;
  EliminationTree t = column_etree(a);
  const std::vector<idx> post = etree_postorder(t.parent);
  const std::vector<idx> rcounts = cholesky_col_counts_ata(a, t.parent, post);
  idx rnz = 0;
  for (idx c : rcounts) rnz += c;
  const idx vnz = householder_vnz(a, t.parent);
  return vnz + rnz - n;
}

}  // namespace densepre
