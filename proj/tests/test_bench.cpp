#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>

#include "densepre/bench.hpp"
#include "densepre/generators.hpp"
#include "doctest.h"

using namespace densepre;

TEST_CASE("the CSV schema is stable") {
  CHECK(csv_header() ==
        "n_plus_m,nnz_m,nnz_b,nnz_reduced,infl,diff,z_time_s,ns_time_s,s_time_s,speedup,error");
}

TEST_CASE("a both-mode run fills every statistic") {
  ArrowheadSpec spec;
  spec.n = 400;
  spec.b_density = 1.0;
  spec.seed = 5;
  RunConfig cfg;
  cfg.mode = BenchMode::both;
  cfg.repeats = 2;
  const BenchRecord r = run_bench(arrowhead(spec), cfg);
  CHECK(r.error.empty());
  CHECK(r.n_plus_m == 401);
  CHECK(r.nnz_m == 1201);
  CHECK(r.nnz_b == 401);
  REQUIRE(r.nnz_reduced);
  CHECK(*r.nnz_reduced == 3 * 400 - 2);
  REQUIRE(r.infl);
  CHECK(*r.infl > 0.9);
  CHECK(*r.infl < 1.01);
  REQUIRE(r.diff);
  CHECK(*r.diff < 1e-8);
  REQUIRE(r.z_time_s);
  REQUIRE(r.ns_time_s);
  CHECK(*r.ns_time_s >= *r.z_time_s);
  REQUIRE(r.s_time_s);
  REQUIRE(r.speedup);
  CHECK(*r.speedup == *r.s_time_s / *r.ns_time_s);
}

TEST_CASE("standard mode leaves the null-space cells empty") {
  const SaddleSystem s = random_saddle(5, 1, 0.8, CMode::zero, 3);
  RunConfig cfg;
  cfg.mode = BenchMode::standard;
  cfg.repeats = 1;
  const BenchRecord r = run_bench(s, cfg);
  CHECK(r.error.empty());
  CHECK(!r.infl);
  CHECK(!r.nnz_reduced);
  CHECK(!r.z_time_s);
  CHECK(!r.ns_time_s);
  CHECK(!r.diff);
  CHECK(!r.speedup);
  REQUIRE(r.s_time_s);
  const std::string row = to_csv_row(r);
  // n_plus_m,nnz_m,nnz_b then eight empty-ish cells: count commas
  CHECK(std::count(row.begin(), row.end(), ',') == 10);
}

TEST_CASE("non-timing columns are reproducible under the seed") {
  ArrowheadSpec spec;
  spec.n = 300;
  spec.b_nnz = 25;
  spec.seed = 11;
  RunConfig cfg;
  cfg.mode = BenchMode::both;
  cfg.repeats = 1;
  const BenchRecord a = run_bench(arrowhead(spec), cfg);
  const BenchRecord b = run_bench(arrowhead(spec), cfg);
  CHECK(a.n_plus_m == b.n_plus_m);
  CHECK(a.nnz_m == b.nnz_m);
  CHECK(a.nnz_b == b.nnz_b);
  CHECK(*a.nnz_reduced == *b.nnz_reduced);
  CHECK(*a.infl == *b.infl);
  CHECK(*a.diff == *b.diff);
}

TEST_CASE("requesting the two-sided path on a C != 0 system is an error row") {
  ArrowheadSpec spec;
  spec.n = 50;
  spec.c_value = 1.0;
  spec.seed = 2;
  RunConfig cfg;
  cfg.mode = BenchMode::two_sided;
  const BenchRecord r = run_bench(arrowhead(spec), cfg);
  CHECK(!r.error.empty());
}

TEST_CASE("solver failures land in the error column") {
  SaddleSystem s = random_saddle(6, 1, 0.5, CMode::zero, 4);
  s.b2 = SparseMatrix(1, 6);  // zero constraint row: basis construction fails
  RunConfig cfg;
  cfg.mode = BenchMode::two_sided;
  const BenchRecord r = run_bench(s, cfg);
  CHECK(!r.error.empty());
  CHECK(!r.ns_time_s);
}

TEST_CASE("the growth table schedule scales to twenty rows") {
  RunConfig cfg;
  cfg.repeats = 1;
  cfg.mode = BenchMode::both;
  const auto rows = reproduce(ReproduceTable::arrowhead_growth, 0.004, cfg);
  REQUIRE(rows.size() == 20);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].error.empty());
    CHECK(rows[i].n_plus_m == static_cast<idx>(100 * (i + 1) + 1));
    CHECK(*rows[i].infl < 1.01);
  }
}

TEST_CASE("the density table keeps the reported border sizes") {
  RunConfig cfg;
  cfg.repeats = 1;
  cfg.mode = BenchMode::both;
  const auto rows = reproduce(ReproduceTable::arrowhead_density, 0.01, cfg);
  REQUIRE(!rows.empty());
  // n = 2500; the |B| schedule is clamped and deduplicated
  CHECK(rows.front().nnz_b == 4);
  CHECK(rows.back().nnz_b == 2501);
  for (const BenchRecord& r : rows) CHECK(r.error.empty());
}

TEST_CASE("the mesh table carries the constant inflation") {
  RunConfig cfg;
  cfg.repeats = 1;
  cfg.mode = BenchMode::two_sided;  // skip the slow standard solve
  const auto rows = reproduce(ReproduceTable::poisson_square, 0.01, cfg);
  REQUIRE(rows.size() == 15);
  for (const BenchRecord& r : rows) {
    CHECK(r.error.empty());
    REQUIRE(r.infl);
    CHECK(*r.infl > 1.3);
    CHECK(*r.infl < 1.7);
  }
}
