#pragma once

#include <span>

#include "discrep/matrix.hpp"

namespace discrep::kernels {

// Data-parallel inner loops shared by all algorithmic modules. Each kernel
// comes in an OpenMP flavor (the default entry point) and a plain serial
// reference flavor kept for testing and benchmarking. The two are bit
// identical: parallelism is only ever over independent output elements and
// every per-element accumulation runs in the same fixed order. The build
// disables FP contraction so the compiler cannot break this.

double dot(std::span<const double> a, std::span<const double> b);
double norm2_squared(std::span<const double> a);
double norm2(std::span<const double> a);

/// out = A x
void matvec(const DenseMatrix& a, std::span<const double> x, std::span<double> out);
void matvec_serial(const DenseMatrix& a, std::span<const double> x, std::span<double> out);

/// G = C^T C for an m-by-k matrix C; result is k-by-k symmetric.
DenseMatrix gram(const DenseMatrix& c);
DenseMatrix gram_serial(const DenseMatrix& c);

/// coeffs[i] = <rows_i, y> for nrows packed rows of length dim.
void row_dots(std::span<const double> rows, int nrows, int dim, std::span<const double> y,
              std::span<double> coeffs);
void row_dots_serial(std::span<const double> rows, int nrows, int dim, std::span<const double> y,
                     std::span<double> coeffs);

/// y -= sum_i coeffs[i] * rows_i. Each component subtracts in ascending i order.
void subtract_combination(std::span<const double> rows, int nrows, int dim,
                          std::span<const double> coeffs, std::span<double> y);
void subtract_combination_serial(std::span<const double> rows, int nrows, int dim,
                                 std::span<const double> coeffs, std::span<double> y);

}  // namespace discrep::kernels
