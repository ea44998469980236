#include "densepre/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "densepre/generators.hpp"
#include "densepre/kernels.hpp"
#include "densepre/lu.hpp"
#include "densepre/sparse.hpp"

namespace densepre {

namespace {

double now_s() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void min_assign(std::optional<double>& slot, double v) {
  if (!slot || v < *slot) slot = v;
}

}  // namespace

std::string csv_header() {
  return "n_plus_m,nnz_m,nnz_b,nnz_reduced,infl,diff,z_time_s,ns_time_s,s_time_s,speedup,error";
}

std::string to_csv_row(const BenchRecord& r) {
  std::string row;
  row += std::to_string(r.n_plus_m) + ',' + std::to_string(r.nnz_m) + ',' +
         std::to_string(r.nnz_b) + ',';
  row += (r.nnz_reduced ? std::to_string(*r.nnz_reduced) : std::string()) + ',';
  row += (r.infl ? fmt(*r.infl) : std::string()) + ',';
  row += (r.diff ? fmt(*r.diff) : std::string()) + ',';
  row += (r.z_time_s ? fmt(*r.z_time_s) : std::string()) + ',';
  row += (r.ns_time_s ? fmt(*r.ns_time_s) : std::string()) + ',';
  row += (r.s_time_s ? fmt(*r.s_time_s) : std::string()) + ',';
  row += (r.speedup ? fmt(*r.speedup) : std::string()) + ',';
  row += r.error;
  return row;
}

BenchRecord run_bench(const SaddleSystem& s, const RunConfig& cfg) {
  s.validate();
  BenchRecord rec;
  rec.n_plus_m = s.n() + s.m();
  rec.nnz_m = s.a.nnz() + s.b1.nnz() + s.b2.nnz() + s.c.nnz();
  rec.nnz_b = s.b2.nnz() + s.c.nnz();
  const int repeats = std::max(1, cfg.repeats);

  const LinearSolver solver = [&cfg](const SparseMatrix& a, const DenseVector& b) {
    return sparse_lu_solve(a, b, cfg.pivot_tol);
  };

  BenchMode ns_mode = cfg.mode;
  if (cfg.mode == BenchMode::both)
    ns_mode = s.c.nnz() == 0 ? BenchMode::two_sided : BenchMode::one_sided_row;

  SaddleSolution ns_sol;
  bool have_ns = false;
  if (ns_mode != BenchMode::standard) {
    try {
      for (int rep = 0; rep < repeats; ++rep) {
        const double t0 = now_s();
        PrestructureResult pre;
        double t1 = t0;
        if (ns_mode == BenchMode::two_sided) {
          BasisOptions opt;
          opt.eps = cfg.eps;
          NullBasis z1 = construct_multi(s.b1, opt);
          NullBasis z2 = construct_multi(s.b2, opt);
          t1 = now_s();
          pre = prestructure_two_sided_with(s, std::move(z1), std::move(z2));
          ns_sol = solve_two_sided(pre, s, solver);
        } else {
          const OneSidedTarget target = ns_mode == BenchMode::one_sided_row
                                            ? OneSidedTarget::row
                                            : OneSidedTarget::column;
          BasisOptions opt;
          opt.eps = cfg.eps;
          const SparseMatrix block = target == OneSidedTarget::row
                                         ? hcat(s.b2, s.c)
                                         : hcat(s.b1, transpose(s.c));
          NullBasis zhat = construct_multi(block, opt);
          t1 = now_s();
          pre = prestructure_one_sided_with(s, target, std::move(zhat));
          ns_sol = solve_one_sided(pre, s, solver);
        }
        const double t2 = now_s();
        min_assign(rec.z_time_s, t1 - t0);
        min_assign(rec.ns_time_s, t2 - t0);
        if (rep == 0) rec.nnz_reduced = pre.reduced.nnz();
      }
      rec.infl = static_cast<double>(*rec.nnz_reduced) / static_cast<double>(rec.nnz_m);
      have_ns = true;
    } catch (const Error& e) {
      rec.error = e.what();
    }
  }

  DenseVector std_sol;
  bool have_std = false;
  if (cfg.mode == BenchMode::standard || cfg.mode == BenchMode::both) {
    try {
      const SparseMatrix big = assemble(s);
      const DenseVector rhs = assemble_rhs(s);
      for (int rep = 0; rep < repeats; ++rep) {
        const double t0 = now_s();
        std_sol = sparse_lu_solve(big, rhs, cfg.pivot_tol);
        min_assign(rec.s_time_s, now_s() - t0);
      }
      have_std = true;
    } catch (const Error& e) {
      if (rec.error.empty()) rec.error = e.what();
    }
  }

  if (have_ns && have_std) {
    DenseVector u = ns_sol.x;
    u.insert(u.end(), ns_sol.y.begin(), ns_sol.y.end());
    DenseVector d(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) d[i] = u[i] - std_sol[i];
    const double den = kernels::inf_norm(std_sol);
    rec.diff = den > 0.0 ? kernels::inf_norm(d) / den : kernels::inf_norm(d);
    rec.speedup = *rec.s_time_s / *rec.ns_time_s;
  }
  return rec;
}

std::vector<BenchRecord> reproduce(ReproduceTable table, double scale, const RunConfig& cfg) {
  if (scale <= 0.0 || scale > 1.0)
    throw InvalidArgumentError("reproduce: scale must lie in (0, 1]");
  std::vector<BenchRecord> rows;

  if (table == ReproduceTable::arrowhead_growth) {
    for (idx k = 1; k <= 20; ++k) {
      ArrowheadSpec spec;
      spec.n = std::max<idx>(40, static_cast<idx>(std::llround(25000.0 * k * scale)));
      spec.b_density = 1.0;
      spec.c_value = 1.0;
      spec.seed = cfg.seed + static_cast<std::uint64_t>(k);
      RunConfig rc = cfg;
      rows.push_back(run_bench(arrowhead(spec), rc));
    }
  } else if (table == ReproduceTable::arrowhead_density) {
    const idx n = std::max<idx>(40, static_cast<idx>(std::llround(250000.0 * scale)));
    // |B| column of the density table; the row block holds |B| - 1 entries
    // and C the remaining one
    const idx schedule[] = {4,     26,    251,   2490,   6175,   12219,  23791, 45314,
                            82359, 98327, 112684, 125802, 137536, 158022, 250001};
    idx prev = -1;
    idx row_id = 0;
    for (idx b : schedule) {
      const idx b2_nnz = std::min<idx>(b - 1, n);
      if (b2_nnz == prev) continue;
      prev = b2_nnz;
      ArrowheadSpec spec;
      spec.n = n;
      spec.b_nnz = b2_nnz;
      spec.c_value = 1.0;
      spec.b1_equals_b2 = true;
      spec.seed = cfg.seed + static_cast<std::uint64_t>(++row_id);
      rows.push_back(run_bench(arrowhead(spec), cfg));
    }
  } else {
    const double kscale = std::sqrt(scale);
    for (int i = 0; i < 15; ++i) {
      const idx k_full = 201 + 25 * i;
      MeshSpec spec;
      spec.k = std::max<idx>(3, static_cast<idx>(std::llround(k_full * kscale)));
      rows.push_back(run_bench(poisson_neumann(spec), cfg));
    }
  }
  return rows;
}

}  // namespace densepre
