#include "densepre/mmio.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "densepre/sparse.hpp"

namespace densepre {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

[[noreturn]] void fail(const std::string& path, idx line, const std::string& msg) {
  throw ParseError(path + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

SparseMatrix read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");

  std::string line;
  idx lineno = 0;

  if (!std::getline(in, line)) fail(path, 1, "empty file");
  ++lineno;
  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (lower(tag) != "%%matrixmarket") fail(path, lineno, "missing %%MatrixMarket banner");
  if (lower(object) != "matrix") fail(path, lineno, "unsupported object '" + object + "'");
  if (lower(format) != "coordinate") fail(path, lineno, "unsupported format '" + format + "'");
  if (lower(field) != "real") fail(path, lineno, "unsupported field '" + field + "'");
  const std::string sym = lower(symmetry);
  if (sym != "general" && sym != "symmetric")
    fail(path, lineno, "unsupported symmetry '" + symmetry + "'");

  idx nrows = 0, ncols = 0, nnz = 0;
  for (;;) {
    if (!std::getline(in, line)) fail(path, lineno + 1, "missing size line");
    ++lineno;
    if (!line.empty() && line[0] == '%') continue;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream sz(line);
    if (!(sz >> nrows >> ncols >> nnz)) fail(path, lineno, "malformed size line");
    std::string extra;
    if (sz >> extra) fail(path, lineno, "trailing tokens on size line");
    break;
  }
  if (nrows < 0 || ncols < 0 || nnz < 0) fail(path, lineno, "negative size");

  Triplets t(nrows, ncols);
  t.entries.reserve(static_cast<std::size_t>(sym == "symmetric" ? 2 * nnz : nnz));
  idx seen = 0;
  while (seen < nnz) {
    if (!std::getline(in, line)) fail(path, lineno + 1, "unexpected end of file, expected " +
                                                            std::to_string(nnz) + " entries");
    ++lineno;
    if (!line.empty() && line[0] == '%') continue;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream es(line);
    idx i = 0, j = 0;
    double v = 0.0;
    if (!(es >> i >> j >> v)) fail(path, lineno, "malformed entry line");
    if (i < 1 || i > nrows || j < 1 || j > ncols)
      fail(path, lineno, "index (" + std::to_string(i) + ", " + std::to_string(j) +
                             ") out of bounds for " + std::to_string(nrows) + " x " +
                             std::to_string(ncols));
    t.add(i - 1, j - 1, v);
    if (sym == "symmetric" && i != j) t.add(j - 1, i - 1, v);
    ++seen;
  }
  return from_triplets(t);
}

void write_matrix_market(const SparseMatrix& a, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw ParseError(path + ": cannot open file for writing");
  std::fprintf(f, "%%%%MatrixMarket matrix coordinate real general\n");
  std::fprintf(f, "%lld %lld %lld\n", static_cast<long long>(a.nrows),
               static_cast<long long>(a.ncols), static_cast<long long>(a.nnz()));
  for (idx i = 0; i < a.nrows; ++i) {
    for (idx p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) {
      std::fprintf(f, "%lld %lld %.17g\n", static_cast<long long>(i + 1),
                   static_cast<long long>(a.col_idx[p] + 1), a.values[p]);
    }
  }
  std::fclose(f);
}

DenseVector read_vector_market(const std::string& path) {
  SparseMatrix a = read_matrix_market(path);
  if (a.ncols != 1) throw ParseError(path + ": expected an n x 1 vector");
  DenseVector v(a.nrows, 0.0);
  for (idx i = 0; i < a.nrows; ++i)
    for (idx p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) v[i] = a.values[p];
  return v;
}

void write_vector_market(const DenseVector& v, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw ParseError(path + ": cannot open file for writing");
  std::fprintf(f, "%%%%MatrixMarket matrix coordinate real general\n");
  std::fprintf(f, "%lld 1 %lld\n", static_cast<long long>(v.size()),
               static_cast<long long>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i)
    std::fprintf(f, "%lld 1 %.17g\n", static_cast<long long>(i + 1), v[i]);
  std::fclose(f);
}

}  // namespace densepre
