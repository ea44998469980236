#pragma once

#include <string>

#include "densepre/types.hpp"

namespace densepre {

// Matrix Market coordinate format, real field, general or symmetric
// (symmetric input is expanded to a general matrix on read). Indices are
// 1-based on disk, values are written with 17 significant digits so a
// write/read round trip is bit-exact.
SparseMatrix read_matrix_market(const std::string& path);
void write_matrix_market(const SparseMatrix& a, const std::string& path);

// Dense vectors travel as n x 1 coordinate matrices with every entry stored.
DenseVector read_vector_market(const std::string& path);
void write_vector_market(const DenseVector& v, const std::string& path);

}  // namespace densepre
