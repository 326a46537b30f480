#include "discrep/kernels.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace discrep::kernels {

namespace {

// Below these work sizes a parallel region costs more than it saves.
constexpr long kParallelWork = 1 << 14;

inline double dot_raw(const double* a, const double* b, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
    return dot_raw(a.data(), b.data(), static_cast<int>(a.size()));
}

double norm2_squared(std::span<const double> a) { return dot_raw(a.data(), a.data(), static_cast<int>(a.size())); }

double norm2(std::span<const double> a) { return std::sqrt(norm2_squared(a)); }

void matvec_serial(const DenseMatrix& a, std::span<const double> x, std::span<double> out) {
    const int m = a.rows(), n = a.cols();
    if (static_cast<int>(x.size()) != n || static_cast<int>(out.size()) != m)
        throw DimensionMismatch("matvec: size mismatch");
    for (int i = 0; i < m; ++i) out[i] = dot_raw(a.row(i).data(), x.data(), n);
}

void matvec(const DenseMatrix& a, std::span<const double> x, std::span<double> out) {
    const int m = a.rows(), n = a.cols();
    if (static_cast<int>(x.size()) != n || static_cast<int>(out.size()) != m)
        throw DimensionMismatch("matvec: size mismatch");
#ifdef _OPENMP
    if (static_cast<long>(m) * n >= kParallelWork) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < m; ++i) out[i] = dot_raw(a.row(i).data(), x.data(), n);
        return;
    }
#endif
    for (int i = 0; i < m; ++i) out[i] = dot_raw(a.row(i).data(), x.data(), n);
}

DenseMatrix gram_serial(const DenseMatrix& c) {
    const int m = c.rows(), k = c.cols();
    DenseMatrix g(k, k);
    for (int i = 0; i < k; ++i) {
        for (int j = i; j < k; ++j) {
            double s = 0.0;
            for (int r = 0; r < m; ++r) s += c(r, i) * c(r, j);
            g(i, j) = s;
            g(j, i) = s;
        }
    }
    return g;
}

namespace {

// One output tile of G = C^T C. Accumulates over rows in ascending order,
// which matches the serial reference entry for entry.
constexpr int kTile = 48;

void gram_tile(const DenseMatrix& c, DenseMatrix& g, int i0, int j0) {
    const int m = c.rows(), k = c.cols();
    const int ih = std::min(kTile, k - i0);
    const int jh = std::min(kTile, k - j0);
    double acc[kTile][kTile];
    for (int a = 0; a < ih; ++a)
        for (int b = 0; b < jh; ++b) acc[a][b] = 0.0;
    for (int r = 0; r < m; ++r) {
        const double* row = c.row(r).data();
        for (int a = 0; a < ih; ++a) {
            const double ca = row[i0 + a];
            const double* rj = row + j0;
            for (int b = 0; b < jh; ++b) acc[a][b] += ca * rj[b];
        }
    }
    for (int a = 0; a < ih; ++a)
        for (int b = 0; b < jh; ++b) {
            const int i = i0 + a, j = j0 + b;
            if (j < i) continue;
            g(i, j) = acc[a][b];
            g(j, i) = acc[a][b];
        }
}

}  // namespace

DenseMatrix gram(const DenseMatrix& c) {
    const int m = c.rows(), k = c.cols();
    DenseMatrix g(k, k);
    const int nt = (k + kTile - 1) / kTile;
    std::vector<std::pair<int, int>> tiles;
    for (int ti = 0; ti < nt; ++ti)
        for (int tj = ti; tj < nt; ++tj) tiles.emplace_back(ti * kTile, tj * kTile);
#ifdef _OPENMP
    if (static_cast<long>(m) * k * k >= kParallelWork) {
#pragma omp parallel for schedule(dynamic)
        for (size_t t = 0; t < tiles.size(); ++t) gram_tile(c, g, tiles[t].first, tiles[t].second);
        return g;
    }
#endif
    for (auto [i0, j0] : tiles) gram_tile(c, g, i0, j0);
    return g;
}

void row_dots_serial(std::span<const double> rows, int nrows, int dim, std::span<const double> y,
                     std::span<double> coeffs) {
    for (int i = 0; i < nrows; ++i)
        coeffs[i] = dot_raw(rows.data() + static_cast<size_t>(i) * dim, y.data(), dim);
}

void row_dots(std::span<const double> rows, int nrows, int dim, std::span<const double> y,
              std::span<double> coeffs) {
#ifdef _OPENMP
    if (static_cast<long>(nrows) * dim >= kParallelWork) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < nrows; ++i)
            coeffs[i] = dot_raw(rows.data() + static_cast<size_t>(i) * dim, y.data(), dim);
        return;
    }
#endif
    row_dots_serial(rows, nrows, dim, y, coeffs);
}

void subtract_combination_serial(std::span<const double> rows, int nrows, int dim,
                                 std::span<const double> coeffs, std::span<double> y) {
    for (int i = 0; i < nrows; ++i) {
        const double ci = coeffs[i];
        const double* row = rows.data() + static_cast<size_t>(i) * dim;
        for (int j = 0; j < dim; ++j) y[j] -= ci * row[j];
    }
}

void subtract_combination(std::span<const double> rows, int nrows, int dim,
                          std::span<const double> coeffs, std::span<double> y) {
#ifdef _OPENMP
    if (static_cast<long>(nrows) * dim >= kParallelWork) {
        // Split the coordinate range; every chunk still walks i in ascending
        // order, so each y[j] sees the same sequence of subtractions.
#pragma omp parallel
        {
            const int nth = omp_get_num_threads();
            const int tid = omp_get_thread_num();
            const int chunk = (dim + nth - 1) / nth;
            const int lo = tid * chunk;
            const int hi = std::min(dim, lo + chunk);
            for (int i = 0; i < nrows; ++i) {
                const double ci = coeffs[i];
                const double* row = rows.data() + static_cast<size_t>(i) * dim;
                for (int j = lo; j < hi; ++j) y[j] -= ci * row[j];
            }
        }
        return;
    }
#endif
    subtract_combination_serial(rows, nrows, dim, coeffs, y);
}

}  // namespace discrep::kernels
