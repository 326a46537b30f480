#pragma once

#include <span>
#include <vector>

#include "discrep/error.hpp"

namespace discrep {

/// Dense real matrix, row-major. Entries must be finite; dimensions at least 1x1.
class DenseMatrix {
  public:
    DenseMatrix(int rows, int cols);  // zero-filled
    DenseMatrix(int rows, int cols, std::vector<double> entries);

    static DenseMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    std::span<double> row(int i) { return {data_.data() + static_cast<size_t>(i) * cols_, static_cast<size_t>(cols_)}; }
    std::span<const double> row(int i) const {
        return {data_.data() + static_cast<size_t>(i) * cols_, static_cast<size_t>(cols_)};
    }

    const std::vector<double>& data() const { return data_; }
    double* data_ptr() { return data_.data(); }

    /// Submatrix keeping the given columns, in the given order.
    DenseMatrix columns(std::span<const int> indices) const;

    DenseMatrix scaled(double factor) const;

    double frobenius_norm() const;

    bool operator==(const DenseMatrix& other) const = default;

  private:
    int rows_;
    int cols_;
    std::vector<double> data_;

    void validate() const;
};

}  // namespace discrep
