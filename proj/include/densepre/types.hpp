#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace densepre {

using idx = std::int64_t;

// All vectors are dense 64-bit real arrays.
using DenseVector = std::vector<double>;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionError : Error {
  using Error::Error;
};
struct IndexError : Error {
  using Error::Error;
};
struct InvalidArgumentError : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};
struct ZeroRowError : Error {
  using Error::Error;
};
struct ZeroPivotError : Error {
  using Error::Error;
};
struct RankDeficiencyError : Error {
  using Error::Error;
};
struct UnsupportedBasisKindError : Error {
  using Error::Error;
};
struct SingularityError : Error {
  using Error::Error;
};
struct RequiresOneSidedError : Error {
  using Error::Error;
};
struct SingularReducedSystemError : Error {
  using Error::Error;
};
struct InconsistentConstraintError : Error {
  using Error::Error;
};
struct SingularMatrixError : Error {
  using Error::Error;
};
struct DeskScaleOnlyError : Error {
  using Error::Error;
};
struct NumericalInstabilityError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// SparseMatrix: compressed sparse row, sorted and duplicate-free column
// indices within each row. Stored entries are structural nonzeros regardless
// of numeric value; arithmetic keeps explicit zeros.
// ---------------------------------------------------------------------------

struct SparseMatrix {
  idx nrows = 0;
  idx ncols = 0;
  std::vector<idx> row_ptr;  // length nrows + 1
  std::vector<idx> col_idx;  // length nnz
  std::vector<double> values;

  SparseMatrix() : row_ptr(1, 0) {}
  SparseMatrix(idx r, idx c) : nrows(r), ncols(c), row_ptr(static_cast<std::size_t>(r) + 1, 0) {}

  idx nnz() const { return static_cast<idx>(col_idx.size()); }

  std::span<const idx> row_cols(idx i) const {
    return {col_idx.data() + row_ptr[i], static_cast<std::size_t>(row_ptr[i + 1] - row_ptr[i])};
  }
  std::span<const double> row_vals(idx i) const {
    return {values.data() + row_ptr[i], static_cast<std::size_t>(row_ptr[i + 1] - row_ptr[i])};
  }
  idx row_nnz(idx i) const { return row_ptr[i + 1] - row_ptr[i]; }

  static SparseMatrix identity(idx n);

  bool same_pattern(const SparseMatrix& o) const {
    return nrows == o.nrows && ncols == o.ncols && row_ptr == o.row_ptr && col_idx == o.col_idx;
  }
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.same_pattern(b) && a.values == b.values;
  }
};

struct Triplet {
  idx row;
  idx col;
  double value;
};

struct Triplets {
  idx nrows = 0;
  idx ncols = 0;
  std::vector<Triplet> entries;

  Triplets() = default;
  Triplets(idx r, idx c) : nrows(r), ncols(c) {}
  void add(idx i, idx j, double v) { entries.push_back({i, j, v}); }
};

}  // namespace densepre
