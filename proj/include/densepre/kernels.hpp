#pragma once

#include "densepre/types.hpp"

// Dense level-1 kernels used by the dense LU oracle, condition estimators and
// residual checks. Each has a scalar reference implementation and an AVX2
// variant; the dispatched entry points pick the widest lane the CPU supports
// at process start (override with DENSEPRE_KERNELS=scalar).
//
// axpy, scale and inf_norm are element-wise and bit-identical across
// backends. dot and one_norm accumulate in lanes, so they may differ from the
// reference by reassociation rounding only.

namespace densepre::kernels {

namespace ref {
double dot(const double* x, const double* y, idx n);
void axpy(double a, const double* x, double* y, idx n);
void scale(double a, double* x, idx n);
double inf_norm(const double* x, idx n);
double one_norm(const double* x, idx n);
}  // namespace ref

double dot(const double* x, const double* y, idx n);
void axpy(double a, const double* x, double* y, idx n);
void scale(double a, double* x, idx n);
double inf_norm(const double* x, idx n);
double one_norm(const double* x, idx n);

inline double dot(const DenseVector& x, const DenseVector& y) {
  return dot(x.data(), y.data(), static_cast<idx>(x.size()));
}
inline double inf_norm(const DenseVector& x) {
  return inf_norm(x.data(), static_cast<idx>(x.size()));
}
inline double one_norm(const DenseVector& x) {
  return one_norm(x.data(), static_cast<idx>(x.size()));
}

const char* backend_name();

}  // namespace densepre::kernels
