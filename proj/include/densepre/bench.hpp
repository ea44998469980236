#pragma once

#include <optional>
#include <string>

#include "densepre/saddle.hpp"
#include "densepre/types.hpp"

namespace densepre {

enum class BenchMode { two_sided, one_sided_row, one_sided_col, standard, both };

// One row of the statistics tables. Absent optionals become empty CSV cells.
struct BenchRecord {
  idx n_plus_m = 0;
  idx nnz_m = 0;
  idx nnz_b = 0;  // nnz(B2) + nnz(C)
  std::optional<idx> nnz_reduced;
  std::optional<double> infl;
  std::optional<double> diff;
  std::optional<double> z_time_s;
  std::optional<double> ns_time_s;  // includes z_time_s
  std::optional<double> s_time_s;
  std::optional<double> speedup;    // s_time_s / ns_time_s
  std::string error;
};

struct RunConfig {
  BenchMode mode = BenchMode::both;
  double eps = 0.0;
  double pivot_tol = 0.1;
  std::uint64_t seed = 0;
  int repeats = 3;  // minimum wall time per phase over repeats
  std::string output;
};

std::string csv_header();
std::string to_csv_row(const BenchRecord& r);

BenchRecord run_bench(const SaddleSystem& s, const RunConfig& cfg);

enum class ReproduceTable { arrowhead_growth, arrowhead_density, poisson_square };

// Regenerate one of the statistics tables at a fraction of the original
// problem sizes.
std::vector<BenchRecord> reproduce(ReproduceTable table, double scale, const RunConfig& cfg);

}  // namespace densepre
