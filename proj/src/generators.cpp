#include "densepre/generators.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "densepre/mmio.hpp"
#include "densepre/sparse.hpp"

namespace densepre {

// xoshiro256** — small, fast, identical everywhere.
Rng::Rng(std::uint64_t seed) {
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL;
  for (auto& s : state_) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    s = x;
    x += 0x9e3779b97f4a7c15ULL;
  }
}

std::uint64_t Rng::next_u64() {
  auto rotl = [](std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Rng::uniform01() {
  for (;;) {
    const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    if (u > 0.0) return u;
  }
}

idx Rng::uniform_int(idx lo, idx hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<idx>(next_u64() % span);
}

namespace {

// k distinct positions in [0, n), ascending
std::vector<idx> sample_positions(Rng& rng, idx n, idx k) {
  std::vector<idx> pool(n);
  for (idx i = 0; i < n; ++i) pool[i] = i;
  for (idx i = 0; i < k; ++i) {
    const idx j = rng.uniform_int(i, n - 1);
    std::swap(pool[i], pool[j]);
  }
  std::vector<idx> out(pool.begin(), pool.begin() + k);
  std::sort(out.begin(), out.end());
  return out;
}

SparseMatrix random_row(Rng& rng, idx n, idx nnz) {
  const std::vector<idx> pos = sample_positions(rng, n, nnz);
  SparseMatrix row(1, n);
  for (idx p : pos) {
    row.col_idx.push_back(p);
    row.values.push_back(rng.uniform01());
  }
  row.row_ptr[1] = row.nnz();
  return row;
}

SparseMatrix full_row(Rng& rng, idx n) {
  SparseMatrix row(1, n);
  row.col_idx.resize(n);
  row.values.resize(n);
  for (idx j = 0; j < n; ++j) {
    row.col_idx[j] = j;
    row.values[j] = rng.uniform01();
  }
  row.row_ptr[1] = n;
  return row;
}

DenseVector random_vector(Rng& rng, idx n) {
  DenseVector v(n);
  for (idx i = 0; i < n; ++i) v[i] = rng.uniform01();
  return v;
}

}  // namespace

SaddleSystem arrowhead(const ArrowheadSpec& spec) {
  if (spec.n < 2) throw InvalidArgumentError("arrowhead: n >= 2 required");
  if (spec.b_density < 0.0 || spec.b_density > 1.0)
    throw InvalidArgumentError("arrowhead: b_density must lie in [0, 1]");
  const idx n = spec.n;
  idx b_nnz = spec.b_nnz ? *spec.b_nnz
                         : static_cast<idx>(std::llround(spec.b_density * static_cast<double>(n)));
  if (b_nnz > n) throw InvalidArgumentError("arrowhead: requested B2 nnz exceeds n");
  if (b_nnz < 0) throw InvalidArgumentError("arrowhead: negative B2 nnz");

  Rng rng(spec.seed);
  SaddleSystem s;
  s.a = SparseMatrix::identity(n);
  s.b2 = random_row(rng, n, b_nnz);
  s.b1 = spec.b1_equals_b2 ? s.b2 : full_row(rng, n);
  s.c = SparseMatrix(1, 1);
  if (spec.c_value != 0.0) {
    s.c.col_idx.push_back(0);
    s.c.values.push_back(spec.c_value);
    s.c.row_ptr[1] = 1;
  }
  s.f = random_vector(rng, n);
  s.g = random_vector(rng, 1);
  return s;
}

SaddleSystem poisson_neumann(const MeshSpec& spec) {
  if (spec.k < 2) throw InvalidArgumentError("poisson_neumann: k >= 2 required");
  const idx k = spec.k;
  const idx n = k * k;
  const double h = 1.0 / static_cast<double>(k - 1);
  const auto vid = [k](idx ix, idx iy) { return iy * k + ix; };

  Triplets ta(n, n);
  DenseVector area(n, 0.0);  // integral of the hat function at each vertex

  // local P1 stiffness of a triangle (p0, p1, p2)
  const auto add_triangle = [&](idx v0, idx v1, idx v2, double x0, double y0, double x1, double y1,
                                double x2, double y2) {
    const double bx[3] = {y1 - y2, y2 - y0, y0 - y1};
    const double by[3] = {x2 - x1, x0 - x2, x1 - x0};
    const double twice_area = (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0);
    const double tri_area = 0.5 * twice_area;
    const idx v[3] = {v0, v1, v2};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double kij = (bx[i] * bx[j] + by[i] * by[j]) / (4.0 * tri_area);
        ta.add(v[i], v[j], kij);
      }
      area[v[i]] += tri_area / 3.0;
    }
  };

  for (idx iy = 0; iy + 1 < k; ++iy) {
    for (idx ix = 0; ix + 1 < k; ++ix) {
      const double x0 = ix * h, y0 = iy * h;
      const double x1 = x0 + h, y1 = y0 + h;
      // right-up diagonal: (x0,y0)-(x1,y1)
      add_triangle(vid(ix, iy), vid(ix + 1, iy), vid(ix + 1, iy + 1), x0, y0, x1, y0, x1, y1);
      add_triangle(vid(ix, iy), vid(ix + 1, iy + 1), vid(ix, iy + 1), x0, y0, x1, y1, x0, y1);
    }
  }

  SaddleSystem s;
  // exact zeros from diagonal-neighbor cancellation are dropped, as an
  // assembled sparse matrix would report
  s.a = prune(from_triplets(ta), 0.0);

  s.b1 = SparseMatrix(1, n);
  s.b1.col_idx.resize(n);
  s.b1.values.resize(n);
  for (idx i = 0; i < n; ++i) {
    s.b1.col_idx[i] = i;
    s.b1.values[i] = area[i];
  }
  s.b1.row_ptr[1] = n;
  s.b2 = s.b1;
  s.c = SparseMatrix(1, 1);

  s.f.assign(n, 0.0);
  for (idx iy = 0; iy < k; ++iy) {
    for (idx ix = 0; ix < k; ++ix) {
      const double load =
          std::cos(std::numbers::pi * ix * h) * std::cos(std::numbers::pi * iy * h);
      s.f[vid(ix, iy)] = area[vid(ix, iy)] * load;
    }
  }
  s.g.assign(1, 0.0);
  return s;
}

SaddleSystem random_saddle(idx n, idx m, double density, CMode c_mode, std::uint64_t seed) {
  if (m < 1 || m >= n) throw InvalidArgumentError("random_saddle: 1 <= m < n required");
  if (density <= 0.0 || density > 1.0)
    throw InvalidArgumentError("random_saddle: density must lie in (0, 1]");
  Rng rng(seed);

  Triplets ta(n, n);
  for (idx i = 0; i < n; ++i) {
    for (idx j = 0; j < n; ++j)
      if (rng.uniform01() < density) ta.add(i, j, rng.uniform01());
    ta.add(i, i, 1.0);  // unit diagonal keeps desk-scale systems nonsingular
  }
  SaddleSystem s;
  s.a = from_triplets(ta);

  const auto random_block_row = [&](idx rows) {
    Triplets tb(rows, n);
    for (idx i = 0; i < rows; ++i) {
      idx count = 0;
      for (idx j = 0; j < n; ++j) {
        if (rng.uniform01() < density) {
          tb.add(i, j, rng.uniform01());
          ++count;
        }
      }
      if (count == 0) tb.add(i, rng.uniform_int(0, n - 1), rng.uniform01());
    }
    return from_triplets(tb);
  };
  s.b1 = random_block_row(m);
  s.b2 = random_block_row(m);

  s.c = SparseMatrix(m, m);
  if (c_mode == CMode::identity) {
    s.c = SparseMatrix::identity(m);
  } else if (c_mode == CMode::random_spd) {
    // R R^T + m I, dense but tiny
    Triplets tr(m, m);
    std::vector<double> r(static_cast<std::size_t>(m) * m);
    for (double& v : r) v = rng.uniform01();
    for (idx i = 0; i < m; ++i) {
      for (idx j = 0; j < m; ++j) {
        double sum = i == j ? static_cast<double>(m) : 0.0;
        for (idx t = 0; t < m; ++t) sum += r[i * m + t] * r[j * m + t];
        tr.add(i, j, sum);
      }
    }
    s.c = from_triplets(tr);
  }

  s.f = random_vector(rng, n);
  s.g = random_vector(rng, m);
  return s;
}

SaddleSystem symmetric_permute_system(const SaddleSystem& s, std::uint64_t seed) {
  s.validate();
  const idx n = s.n();
  Rng rng(seed);
  std::vector<idx> perm(n);
  for (idx i = 0; i < n; ++i) perm[i] = i;
  for (idx i = 0; i < n - 1; ++i) std::swap(perm[i], perm[rng.uniform_int(i, n - 1)]);

  std::vector<idx> rows_m(s.m());
  for (idx i = 0; i < s.m(); ++i) rows_m[i] = i;
  SaddleSystem out;
  out.a = permuted(s.a, perm, perm);
  out.b1 = permuted(s.b1, rows_m, perm);
  out.b2 = permuted(s.b2, rows_m, perm);
  out.c = s.c;
  out.f.resize(n);
  for (idx i = 0; i < n; ++i) out.f[i] = s.f[perm[i]];
  out.g = s.g;
  return out;
}

void write_system(const SaddleSystem& s, const std::string& dir, const std::string& manifest) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  write_matrix_market(s.a, (base / "A.mtx").string());
  write_matrix_market(s.b1, (base / "B1.mtx").string());
  write_matrix_market(s.b2, (base / "B2.mtx").string());
  write_matrix_market(s.c, (base / "C.mtx").string());
  write_vector_market(s.f, (base / "f.mtx").string());
  write_vector_market(s.g, (base / "g.mtx").string());
  std::ofstream mf(base / "manifest.txt");
  mf << manifest;
}

SaddleSystem read_system(const std::string& dir) {
  const std::filesystem::path base(dir);
  SaddleSystem s;
  s.a = read_matrix_market((base / "A.mtx").string());
  s.b1 = read_matrix_market((base / "B1.mtx").string());
  s.b2 = read_matrix_market((base / "B2.mtx").string());
  s.c = read_matrix_market((base / "C.mtx").string());
  s.f = read_vector_market((base / "f.mtx").string());
  s.g = read_vector_market((base / "g.mtx").string());
  s.validate();
  return s;
}

}  // namespace densepre
