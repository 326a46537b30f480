#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "discrep/matrix.hpp"

namespace discrep {

/// Every hereditary-discrepancy lower bound computable from the spectrum of
/// A^T A, evaluated for each k in 1..min(m, n).
struct BoundReport {
    int m = 0;
    int n = 0;
    std::vector<double> eigenvalues;  // of A^T A, descending
    std::vector<std::pair<int, double>> per_k_inf;
    std::vector<std::pair<int, double>> per_k_inf_prod;
    std::vector<std::pair<int, double>> per_k_l2;
    double trace_bound = 0.0;
    std::optional<double> det_bound_l2;  // absent when det(A^T A) = 0
    double best_inf = 0.0;
    double best_l2 = 0.0;
};

/// herdisc(A) >= (k / 2e) * sqrt(lambda_k / (m n))
double eigen_bound_inf(std::span<const double> eigenvalues, int m, int n, int k);

/// herdisc(A) >= (1/2) * (prod_{i<=k} lambda_i / (C(n,k) C(m,k)))^(1/2k),
/// evaluated in log space.
double eigen_bound_inf_prod(std::span<const double> eigenvalues, int m, int n, int k);

/// herdisc(A) >= tr^2 M / (8e min(n,m) tr M^2) * sqrt(tr M / max(m,n)),
/// M = A^T A. Throws ZeroMatrix when tr M = 0.
double trace_bound(const DenseMatrix& a);

/// herdisc_2(A) >= sqrt(n / (8 pi e m)) * det(A^T A)^(1/2n); 0 when singular.
double det_bound_l2(const DenseMatrix& a);

/// herdisc_2(A) >= (k / e) * sqrt(lambda_k / (8 pi m n))
double eigen_bound_l2(std::span<const double> eigenvalues, int m, int n, int k);

struct SubmatrixDet {
    double value;
    std::vector<int> columns;
};

/// Enumerates all k-column submatrices C and returns the maximal det(C^T C)
/// with the lexicographically first achieving column set. Cap: n <= 16.
SubmatrixDet best_submatrix_det(const DenseMatrix& a, int k, int max_n = 16);

/// One A^T A eigendecomposition feeding every bound above.
BoundReport bound_report(const DenseMatrix& a);

}  // namespace discrep
