#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "densepre/saddle.hpp"
#include "densepre/types.hpp"

namespace densepre {

// Deterministic uniform source; identical spec + seed gives bit-identical
// systems on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next_u64();
  double uniform01();              // in (0, 1)
  idx uniform_int(idx lo, idx hi); // inclusive bounds

 private:
  std::uint64_t state_[4];
};

struct ArrowheadSpec {
  idx n = 0;
  double b_density = 1.0;        // ignored when b_nnz is set
  std::optional<idx> b_nnz;
  double c_value = 1.0;          // 0 leaves C structurally empty
  std::uint64_t seed = 0;
  bool b1_equals_b2 = false;     // share the sparse row; otherwise B1 is full
};

// A = I_n bordered by random rows/columns with entries in (0, 1).
SaddleSystem arrowhead(const ArrowheadSpec& spec);

struct MeshSpec {
  idx k = 2;  // k x k vertex grid on the unit square, right-up cell diagonals
};

// P1 stiffness matrix of the Neumann Laplacian on a structured triangulation
// plus the mean-value constraint row; the load is cos(pi x) cos(pi y).
// Assembly drops exact numeric zeros so the stencil counts match what
// assembled sparse matrices report in practice.
SaddleSystem poisson_neumann(const MeshSpec& spec);

enum class CMode { zero, identity, random_spd };

SaddleSystem random_saddle(idx n, idx m, double density, CMode c_mode, std::uint64_t seed);

// Symmetric permutation of the whole system (same permutation on rows and
// columns of A, columns of the B blocks, and f).
SaddleSystem symmetric_permute_system(const SaddleSystem& s, std::uint64_t seed);

// Directory layout: A.mtx B1.mtx B2.mtx C.mtx f.mtx g.mtx + manifest.txt
void write_system(const SaddleSystem& s, const std::string& dir, const std::string& manifest);
SaddleSystem read_system(const std::string& dir);

}  // namespace densepre
