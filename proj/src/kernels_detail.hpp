#pragma once

#include "densepre/types.hpp"

#if DENSEPRE_HAVE_AVX2
namespace densepre::kernels::avx2 {
double dot(const double* x, const double* y, idx n);
void axpy(double a, const double* x, double* y, idx n);
void scale(double a, double* x, idx n);
double inf_norm(const double* x, idx n);
double one_norm(const double* x, idx n);
}  // namespace densepre::kernels::avx2
#endif
