#include <algorithm>
#include <cmath>

#include "densepre/lu.hpp"
#include "densepre/sparse.hpp"

namespace densepre {

namespace {

// Doubly linked degree buckets. Degrees are approximate external degrees,
// capped at n - 1.
struct DegreeLists {
  std::vector<idx> head;  // head[d] = first column with degree d
  std::vector<idx> next, prev, deg;
  idx cur_min = 0;

  explicit DegreeLists(idx n) : head(n + 1, -1), next(n, -1), prev(n, -1), deg(n, -1) {}

  void insert(idx v, idx d) {
    deg[v] = d;
    next[v] = head[d];
    prev[v] = -1;
    if (head[d] != -1) prev[head[d]] = v;
    head[d] = v;
    cur_min = std::min(cur_min, d);
  }
  void remove(idx v) {
    if (prev[v] != -1)
      next[prev[v]] = next[v];
    else
      head[deg[v]] = next[v];
    if (next[v] != -1) prev[next[v]] = prev[v];
  }
  idx pop_min() {
    while (head[cur_min] == -1) ++cur_min;
    const idx v = head[cur_min];
    remove(v);
    return v;
  }
};

}  // namespace

// Quotient-graph minimum degree. The rows of a are the initial elements, so
// a dense row stays one element and is never expanded into clique edges.
// Eliminating p merges every element containing p into a new element with
// member set Lp; the approximate external degree of v in Lp is
// |Lp \ v| + sum over its other elements e of |Le \ Lp|.
std::vector<idx> min_degree_order(const SparseMatrix& a) {
  const idx n = a.ncols;
  std::vector<idx> perm;
  perm.reserve(n);
  if (n == 0) return perm;

  // flag dense columns; they are kept out of the quotient graph
  const idx threshold = static_cast<idx>(std::ceil(10.0 * std::sqrt(static_cast<double>(n))));
  std::vector<idx> col_nnz(n, 0);
  for (idx c : a.col_idx) ++col_nnz[c];
  std::vector<char> dense(n, 0);
  idx n_dense = 0;
  for (idx j = 0; j < n; ++j) {
    if (col_nnz[j] > threshold) {
      dense[j] = 1;
      ++n_dense;
    }
  }

  // initial elements are the rows of a, restricted to live columns
  std::vector<std::vector<idx>> elem;
  elem.reserve(a.nrows + n);
  std::vector<std::vector<idx>> col_elems(n);
  for (idx i = 0; i < a.nrows; ++i) {
    std::vector<idx> members;
    for (idx p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p)
      if (!dense[a.col_idx[p]]) members.push_back(a.col_idx[p]);
    if (members.size() < 2) continue;  // no coupling, no degree contribution
    const idx e = static_cast<idx>(elem.size());
    for (idx v : members) col_elems[v].push_back(e);
    elem.push_back(std::move(members));
  }
  std::vector<char> alive(elem.size(), 1);

  DegreeLists lists(n);
  const idx cap = n - 1;
  // reverse insertion makes ties pop in index order
  for (idx v = n - 1; v >= 0; --v) {
    if (dense[v]) continue;
    idx d = 0;
    for (idx e : col_elems[v]) d += static_cast<idx>(elem[e].size()) - 1;
    lists.insert(v, std::min(d, cap));
  }

  std::vector<char> eliminated(n, 0);
  std::vector<idx> vstamp(n, -1);
  std::vector<idx> estamp, ework;  // per-element |Le \ Lp| workspace
  std::vector<idx> front, seen_elems;
  const idx n_live = n - n_dense;

  for (idx step = 0; step < n_live; ++step) {
    const idx p = lists.pop_min();
    eliminated[p] = 1;
    perm.push_back(p);

    // Lp = union of all elements containing p, minus p; those elements are
    // absorbed into the new one
    front.clear();
    for (idx e : col_elems[p]) {
      if (!alive[e]) continue;
      for (idx v : elem[e]) {
        if (v == p) continue;
        if (vstamp[v] != step) {
          vstamp[v] = step;
          front.push_back(v);
        }
      }
      alive[e] = 0;
      elem[e].clear();
      elem[e].shrink_to_fit();
    }
    col_elems[p].clear();
    col_elems[p].shrink_to_fit();
    if (front.empty()) continue;

    estamp.resize(elem.size() + 1, -1);
    ework.resize(elem.size() + 1, 0);

    // pass 1: |Le \ Lp| for every live element touching the front
    seen_elems.clear();
    for (idx v : front) {
      auto& list = col_elems[v];
      std::size_t keep = 0;
      for (idx e : list) {
        if (!alive[e]) continue;
        list[keep++] = e;
        if (estamp[e] != step) {
          estamp[e] = step;
          ework[e] = static_cast<idx>(elem[e].size());
          seen_elems.push_back(e);
        }
        --ework[e];
      }
      list.resize(keep);
    }
    // aggressive absorption: an element entirely inside the front is redundant
    for (idx e : seen_elems) {
      if (ework[e] == 0) {
        alive[e] = 0;
        elem[e].clear();
        elem[e].shrink_to_fit();
      }
    }

    const idx e_new = static_cast<idx>(elem.size());
    elem.push_back(front);
    alive.push_back(1);

    // pass 2: approximate external degrees
    const idx front_sz = static_cast<idx>(front.size());
    for (idx v : front) {
      auto& list = col_elems[v];
      std::size_t keep = 0;
      idx d = front_sz - 1;
      for (idx e : list) {
        if (!alive[e]) continue;
        list[keep++] = e;
        d += ework[e];
      }
      list.resize(keep);
      list.push_back(e_new);
      lists.remove(v);
      lists.insert(v, std::min(d, cap));
    }
  }

  for (idx j = 0; j < n; ++j)
    if (dense[j]) perm.push_back(j);
  return perm;
}

}  // namespace densepre
