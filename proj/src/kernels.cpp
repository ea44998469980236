#include "densepre/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <string_view>

#include "kernels_detail.hpp"

namespace densepre::kernels {

namespace ref {

double dot(const double* x, const double* y, idx n) {
  double s = 0.0;
  for (idx i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy(double a, const double* x, double* y, idx n) {
  for (idx i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale(double a, double* x, idx n) {
  for (idx i = 0; i < n; ++i) x[i] *= a;
}

double inf_norm(const double* x, idx n) {
  double m = 0.0;
  for (idx i = 0; i < n; ++i) m = std::max(m, std::fabs(x[i]));
  return m;
}

double one_norm(const double* x, idx n) {
  double s = 0.0;
  for (idx i = 0; i < n; ++i) s += std::fabs(x[i]);
  return s;
}

}  // namespace ref

namespace {

struct Dispatch {
  double (*dot)(const double*, const double*, idx) = ref::dot;
  void (*axpy)(double, const double*, double*, idx) = ref::axpy;
  void (*scale)(double, double*, idx) = ref::scale;
  double (*inf_norm)(const double*, idx) = ref::inf_norm;
  double (*one_norm)(const double*, idx) = ref::one_norm;
  const char* name = "scalar";
};

Dispatch make_dispatch() {
  Dispatch d;
#if DENSEPRE_HAVE_AVX2
  const char* env = std::getenv("DENSEPRE_KERNELS");
  const bool force_scalar = env && std::string_view(env) == "scalar";
  if (!force_scalar && __builtin_cpu_supports("avx2")) {
    d.dot = avx2::dot;
    d.axpy = avx2::axpy;
    d.scale = avx2::scale;
    d.inf_norm = avx2::inf_norm;
    d.one_norm = avx2::one_norm;
    d.name = "avx2";
  }
#endif
  return d;
}

const Dispatch& dispatch() {
  static const Dispatch d = make_dispatch();
  return d;
}

}  // namespace

double dot(const double* x, const double* y, idx n) { return dispatch().dot(x, y, n); }
void axpy(double a, const double* x, double* y, idx n) { dispatch().axpy(a, x, y, n); }
void scale(double a, double* x, idx n) { dispatch().scale(a, x, n); }
double inf_norm(const double* x, idx n) { return dispatch().inf_norm(x, n); }
double one_norm(const double* x, idx n) { return dispatch().one_norm(x, n); }
const char* backend_name() { return dispatch().name; }

}  // namespace densepre::kernels
