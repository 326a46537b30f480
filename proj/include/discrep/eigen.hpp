#pragma once

#include <vector>

#include "discrep/matrix.hpp"

namespace discrep {

/// Eigendecomposition of a symmetric PSD matrix. Eigenvalues are sorted in
/// descending order and clamped at zero; eigenvectors() holds the matching
/// orthonormal eigenvectors as columns.
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    DenseMatrix eigenvectors;

    std::vector<double> eigenvector(int i) const {
        const int k = eigenvectors.rows();
        std::vector<double> v(k);
        for (int r = 0; r < k; ++r) v[r] = eigenvectors(r, i);
        return v;
    }
};

/// Symmetric eigensolver: cyclic Jacobi rotations in round-robin (tournament)
/// order, swept until the off-diagonal Frobenius norm drops below
/// 1e-12 * ||M||_F or 64 sweeps. Deterministic for a fixed input and
/// independent of the number of OpenMP threads.
///
/// Throws NotSymmetric when the asymmetry exceeds 1e-10 * (1 + ||M||_F) and
/// NotPSD when an eigenvalue falls below -1e-6 * ||M||_F. Eigenvalues in
/// [-tol, 0) are clamped to exactly 0.
EigenDecomposition sym_eigen(const DenseMatrix& m);

/// Serial reference implementation; same rotation schedule and arithmetic.
EigenDecomposition sym_eigen_serial(const DenseMatrix& m);

}  // namespace discrep
