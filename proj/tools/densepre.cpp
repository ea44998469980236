#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "densepre/bench.hpp"
#include "densepre/generators.hpp"
#include "densepre/graph.hpp"
#include "densepre/lu.hpp"
#include "densepre/mmio.hpp"
#include "densepre/null_basis.hpp"
#include "densepre/saddle.hpp"
#include "densepre/sparse.hpp"

namespace {

using namespace densepre;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitNumerical = 3;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("DENSEPRE_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      return 0;
    }
  }
  return 0;
}

SaddleSystem load_system(const std::string& path) {
  if (!std::filesystem::is_directory(path))
    throw ParseError(path + ": expected a system directory (A.mtx, B1.mtx, ...)");
  return read_system(path);
}

SparseMatrix load_matrix_or_system(const std::string& path) {
  if (std::filesystem::is_directory(path)) return assemble(read_system(path));
  return read_matrix_market(path);
}

BenchMode parse_mode(const std::string& name) {
  if (name == "two_sided") return BenchMode::two_sided;
  if (name == "one_sided_row") return BenchMode::one_sided_row;
  if (name == "one_sided_col") return BenchMode::one_sided_col;
  if (name == "standard") return BenchMode::standard;
  if (name == "both") return BenchMode::both;
  throw CLI::ValidationError("--mode", "unknown mode '" + name + "'");
}

void emit_csv(const std::vector<BenchRecord>& rows, const std::string& out) {
  std::ostringstream text;
  text << csv_header() << '\n';
  for (const BenchRecord& r : rows) text << to_csv_row(r) << '\n';
  if (out.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream f(out);
    if (!f) throw ParseError(out + ": cannot open for writing");
    f << text.str();
  }
}

int run(int argc, char** argv) {
  CLI::App app{"sparse saddle-point toolkit: dense row/column elimination via "
               "null-space prestructuring, with a built-in sparse LU solver"};
  app.require_subcommand(1);

  // --- generate ---
  auto* gen = app.add_subcommand("generate", "write a test system as a directory of .mtx files");
  gen->require_subcommand(1);
  std::string out_dir;

  auto* gen_arrow = gen->add_subcommand("arrowhead", "identity A bordered by random rows/columns");
  idx arrow_n = 1000;
  double arrow_density = 1.0;
  idx arrow_bnnz = -1;
  double arrow_c = 1.0;
  bool arrow_shared = false;
  std::uint64_t arrow_seed = default_seed();
  gen_arrow->add_option("--n", arrow_n, "order of A")->required();
  gen_arrow->add_option("--b-density", arrow_density, "fraction of nonzeros in B2");
  gen_arrow->add_option("--b-nnz", arrow_bnnz, "explicit nnz of B2 (overrides --b-density)");
  gen_arrow->add_option("--c-value", arrow_c, "corner entry; 0 leaves C empty");
  gen_arrow->add_flag("--b-shared", arrow_shared, "use B1 = B2 instead of a full random B1");
  gen_arrow->add_option("--seed", arrow_seed, "rng seed (default $DENSEPRE_SEED or 0)");
  gen_arrow->add_option("--out", out_dir, "output directory")->required();

  auto* gen_poisson = gen->add_subcommand("poisson", "P1 Neumann Laplacian with a mean constraint");
  idx poisson_k = 21;
  std::int64_t permute_seed = -1;
  gen_poisson->add_option("--k", poisson_k, "vertices per side of the grid")->required();
  gen_poisson->add_option("--permute-seed", permute_seed,
                          "apply a random symmetric permutation with this seed");
  gen_poisson->add_option("--out", out_dir, "output directory")->required();

  auto* gen_random = gen->add_subcommand("random", "random sparse saddle system");
  idx rand_n = 100, rand_m = 1;
  double rand_density = 0.05;
  std::string rand_cmode = "zero";
  std::uint64_t rand_seed = default_seed();
  gen_random->add_option("--n", rand_n)->required();
  gen_random->add_option("--m", rand_m)->required();
  gen_random->add_option("--density", rand_density)->required();
  gen_random->add_option("--c-mode", rand_cmode, "zero | identity | spd");
  gen_random->add_option("--seed", rand_seed);
  gen_random->add_option("--out", out_dir, "output directory")->required();

  // --- analyze ---
  auto* analyze = app.add_subcommand("analyze", "dense rows, etree height and fill bound");
  std::string analyze_path;
  analyze->add_option("path", analyze_path, "system directory or .mtx file")->required();

  // --- prestructure ---
  auto* pre = app.add_subcommand("prestructure", "build the reduced system and report sparsity");
  std::string pre_path, pre_mode = "two_sided", pre_out;
  double pre_eps = 0.0;
  bool pre_condest = false;
  pre->add_option("path", pre_path)->required();
  pre->add_option("--mode", pre_mode, "two_sided | one_sided_row | one_sided_col");
  pre->add_option("--eps", pre_eps, "numerical nonzero threshold");
  pre->add_flag("--condest", pre_condest, "also estimate cond1(Z^T Z)");
  pre->add_option("--out", pre_out, "write reduced.mtx and rhs.mtx here");

  // --- solve ---
  auto* solve_cmd = app.add_subcommand("solve", "solve the system by the chosen path");
  std::string solve_path, solve_mode = "both", solve_out;
  double solve_eps = 0.0, solve_ptol = 0.1;
  solve_cmd->add_option("path", solve_path)->required();
  solve_cmd->add_option("--mode", solve_mode,
                        "two_sided | one_sided_row | one_sided_col | standard | both");
  solve_cmd->add_option("--eps", solve_eps);
  solve_cmd->add_option("--pivot-tol", solve_ptol);
  solve_cmd->add_option("--out", solve_out, "write x.mtx and y.mtx here");

  // --- bench ---
  auto* bench_cmd = app.add_subcommand("bench", "timed comparison, CSV output");
  std::string bench_path, bench_mode = "both", bench_out;
  RunConfig bench_cfg;
  bench_cfg.seed = default_seed();
  bench_cmd->add_option("path", bench_path)->required();
  bench_cmd->add_option("--mode", bench_mode);
  bench_cmd->add_option("--eps", bench_cfg.eps);
  bench_cmd->add_option("--pivot-tol", bench_cfg.pivot_tol);
  bench_cmd->add_option("--seed", bench_cfg.seed);
  bench_cmd->add_option("--repeats", bench_cfg.repeats);
  bench_cmd->add_option("--out", bench_out, "CSV file (default stdout)");

  // --- reproduce ---
  auto* repro = app.add_subcommand("reproduce", "regenerate a statistics table at reduced scale");
  std::string repro_table, repro_out;
  double repro_scale = 0.1;
  RunConfig repro_cfg;
  repro_cfg.seed = default_seed();
  repro->add_option("--table", repro_table, "arrowhead_growth | arrowhead_density | poisson_square")
      ->required();
  repro->add_option("--scale", repro_scale, "size fraction in (0, 1]");
  repro->add_option("--repeats", repro_cfg.repeats);
  repro->add_option("--seed", repro_cfg.seed);
  repro->add_option("--pivot-tol", repro_cfg.pivot_tol);
  repro->add_option("--out", repro_out, "CSV file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (gen_arrow->parsed()) {
    ArrowheadSpec spec;
    spec.n = arrow_n;
    spec.b_density = arrow_density;
    if (arrow_bnnz >= 0) spec.b_nnz = arrow_bnnz;
    spec.c_value = arrow_c;
    spec.seed = arrow_seed;
    spec.b1_equals_b2 = arrow_shared;
    std::ostringstream mf;
    mf << "kind arrowhead\nn " << arrow_n << "\nb_density " << arrow_density << "\nb_nnz "
       << (arrow_bnnz >= 0 ? std::to_string(arrow_bnnz) : "auto") << "\nc_value " << arrow_c
       << "\nb_shared " << arrow_shared << "\nseed " << arrow_seed << "\n";
    write_system(arrowhead(spec), out_dir, mf.str());
    std::cout << "wrote arrowhead system to " << out_dir << "\n";
  } else if (gen_poisson->parsed()) {
    MeshSpec spec;
    spec.k = poisson_k;
    SaddleSystem s = poisson_neumann(spec);
    if (permute_seed >= 0)
      s = symmetric_permute_system(s, static_cast<std::uint64_t>(permute_seed));
    std::ostringstream mf;
    mf << "kind poisson\nk " << poisson_k << "\npermute_seed " << permute_seed << "\n";
    write_system(s, out_dir, mf.str());
    std::cout << "wrote poisson system to " << out_dir << "\n";
  } else if (gen_random->parsed()) {
    CMode cm = CMode::zero;
    if (rand_cmode == "identity")
      cm = CMode::identity;
    else if (rand_cmode == "spd")
      cm = CMode::random_spd;
    else if (rand_cmode != "zero")
      throw CLI::ValidationError("--c-mode", "unknown c-mode '" + rand_cmode + "'");
    std::ostringstream mf;
    mf << "kind random\nn " << rand_n << "\nm " << rand_m << "\ndensity " << rand_density
       << "\nc_mode " << rand_cmode << "\nseed " << rand_seed << "\n";
    write_system(random_saddle(rand_n, rand_m, rand_density, cm, rand_seed), out_dir, mf.str());
    std::cout << "wrote random system to " << out_dir << "\n";
  } else if (analyze->parsed()) {
    const SparseMatrix m = load_matrix_or_system(analyze_path);
    const DensityReport rep = detect_dense_rows(m);
    std::cout << "matrix: " << m.nrows << " x " << m.ncols << ", nnz " << m.nnz() << "\n";
    std::cout << "dense rows (> " << rep.row_threshold << " entries): " << rep.dense_rows.size();
    for (std::size_t i = 0; i < rep.dense_rows.size() && i < 8; ++i)
      std::cout << (i ? "," : "  [") << rep.dense_rows[i];
    if (!rep.dense_rows.empty()) std::cout << (rep.dense_rows.size() > 8 ? ",...]" : "]");
    std::cout << "\n";
    std::cout << "dense cols (> " << rep.col_threshold << " entries): " << rep.dense_cols.size()
              << "\n";
    const EliminationTree t = column_etree(m);
    std::cout << "column etree height h = " << t.height << "\n";
    if (m.nrows == m.ncols)
      std::cout << "symbolic |L+U| bound = " << symbolic_fill_bound(m) << "\n";
  } else if (pre->parsed()) {
    const SaddleSystem s = load_system(pre_path);
    const BenchMode mode = parse_mode(pre_mode);
    PrestructureResult p;
    if (mode == BenchMode::two_sided)
      p = prestructure_two_sided(s, pre_eps);
    else if (mode == BenchMode::one_sided_row)
      p = prestructure_one_sided(s, OneSidedTarget::row, pre_eps);
    else if (mode == BenchMode::one_sided_col)
      p = prestructure_one_sided(s, OneSidedTarget::column, pre_eps);
    else
      throw CLI::ValidationError("--mode", "prestructure needs a null-space mode");
    const idx nnz_m = s.a.nnz() + s.b1.nnz() + s.b2.nnz() + s.c.nnz();
    const NullBasis& active = mode == BenchMode::one_sided_col ? p.z1 : p.z2;
    std::cout << "n_plus_m " << s.n() + s.m() << "\n";
    std::cout << "nnz_m " << nnz_m << "\n";
    std::cout << "nnz_reduced " << p.reduced.nnz() << "\n";
    std::cout << "infl " << static_cast<double>(p.reduced.nnz()) / nnz_m << "\n";
    std::cout << "max_abs_ratio " << active.max_abs_ratio << "\n";
    if (active.kind == BasisKind::bidiagonal_alg3)
      std::cout << "sigma1_bound " << sigma1_upper_bound(active) << "\n";
    if (pre_condest) std::cout << "condest_ztz " << condest_ztz(active) << "\n";
    if (!pre_out.empty()) {
      std::filesystem::create_directories(pre_out);
      write_matrix_market(p.reduced, (std::filesystem::path(pre_out) / "reduced.mtx").string());
      write_vector_market(p.rhs, (std::filesystem::path(pre_out) / "rhs.mtx").string());
    }
  } else if (solve_cmd->parsed()) {
    const SaddleSystem s = load_system(solve_path);
    const BenchMode mode = parse_mode(solve_mode);
    RunConfig cfg;
    cfg.mode = mode;
    cfg.eps = solve_eps;
    cfg.pivot_tol = solve_ptol;
    cfg.repeats = 1;
    const BenchRecord rec = run_bench(s, cfg);
    if (!rec.error.empty()) throw SingularMatrixError(rec.error);
    if (rec.ns_time_s) std::cout << "ns_time_s " << *rec.ns_time_s << "\n";
    if (rec.s_time_s) std::cout << "s_time_s " << *rec.s_time_s << "\n";
    if (rec.diff) std::cout << "diff " << *rec.diff << "\n";
    // recompute the chosen solution for output and residual reporting
    if (mode != BenchMode::standard) {
      PrestructureResult p;
      SaddleSolution sol;
      const LinearSolver solver = [&cfg](const SparseMatrix& a, const DenseVector& b) {
        return sparse_lu_solve(a, b, cfg.pivot_tol);
      };
      BenchMode eff = mode;
      if (mode == BenchMode::both)
        eff = s.c.nnz() == 0 ? BenchMode::two_sided : BenchMode::one_sided_row;
      if (eff == BenchMode::two_sided) {
        p = prestructure_two_sided(s, solve_eps);
        sol = solve_two_sided(p, s, solver);
      } else {
        p = prestructure_one_sided(
            s, eff == BenchMode::one_sided_row ? OneSidedTarget::row : OneSidedTarget::column,
            solve_eps);
        sol = solve_one_sided(p, s, solver);
      }
      std::cout << "residual_inf " << sol.residual_inf << "\n";
      if (!solve_out.empty()) {
        std::filesystem::create_directories(solve_out);
        write_vector_market(sol.x, (std::filesystem::path(solve_out) / "x.mtx").string());
        write_vector_market(sol.y, (std::filesystem::path(solve_out) / "y.mtx").string());
      }
    } else if (!solve_out.empty()) {
      const DenseVector u = sparse_lu_solve(assemble(s), assemble_rhs(s), solve_ptol);
      const DenseVector x(u.begin(), u.begin() + s.n());
      const DenseVector y(u.begin() + s.n(), u.end());
      std::filesystem::create_directories(solve_out);
      write_vector_market(x, (std::filesystem::path(solve_out) / "x.mtx").string());
      write_vector_market(y, (std::filesystem::path(solve_out) / "y.mtx").string());
    }
  } else if (bench_cmd->parsed()) {
    const SaddleSystem s = load_system(bench_path);
    bench_cfg.mode = parse_mode(bench_mode);
    const BenchRecord rec = run_bench(s, bench_cfg);
    emit_csv({rec}, bench_out);
    if (!rec.error.empty()) return kExitNumerical;
  } else if (repro->parsed()) {
    ReproduceTable table;
    if (repro_table == "arrowhead_growth")
      table = ReproduceTable::arrowhead_growth;
    else if (repro_table == "arrowhead_density")
      table = ReproduceTable::arrowhead_density;
    else if (repro_table == "poisson_square")
      table = ReproduceTable::poisson_square;
    else
      throw CLI::ValidationError("--table", "unknown table '" + repro_table + "'");
    const std::vector<BenchRecord> rows = reproduce(table, repro_scale, repro_cfg);
    emit_csv(rows, repro_out);
    for (const BenchRecord& r : rows)
      if (!r.error.empty()) return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const densepre::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const densepre::InvalidArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const densepre::DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const densepre::IndexError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const densepre::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
