#include "discrep/matrix.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace discrep {

DenseMatrix::DenseMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, 0.0) {
    if (rows < 1 || cols < 1) throw DimensionMismatch("matrix dimensions must be at least 1x1");
}

DenseMatrix::DenseMatrix(int rows, int cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    validate();
}

void DenseMatrix::validate() const {
    if (rows_ < 1 || cols_ < 1) throw DimensionMismatch("matrix dimensions must be at least 1x1");
    if (data_.size() != static_cast<size_t>(rows_) * cols_)
        throw DimensionMismatch("entry count does not match dimensions");
    for (double v : data_)
        if (!std::isfinite(v)) throw Error("matrix entries must be finite");
}

DenseMatrix DenseMatrix::identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::columns(std::span<const int> indices) const {
    if (indices.empty()) throw DimensionMismatch("column selection must be nonempty");
    for (int j : indices)
        if (j < 0 || j >= cols_) throw DimensionMismatch("column index out of range");
    DenseMatrix out(rows_, static_cast<int>(indices.size()));
    for (int i = 0; i < rows_; ++i) {
        const double* src = data_.data() + static_cast<size_t>(i) * cols_;
        double* dst = out.data_.data() + static_cast<size_t>(i) * indices.size();
        for (size_t j = 0; j < indices.size(); ++j) dst[j] = src[indices[j]];
    }
    return out;
}

DenseMatrix DenseMatrix::scaled(double factor) const {
    DenseMatrix out = *this;
    for (double& v : out.data_) v *= factor;
    return out;
}

double DenseMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
}

}  // namespace discrep
