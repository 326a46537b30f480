#include "discrep/basis.hpp"

#include <cmath>

#include "discrep/error.hpp"
#include "discrep/kernels.hpp"

namespace discrep {

OrthonormalBasis::OrthonormalBasis(int dim) : dim_(dim) {
    if (dim < 1) throw DimensionMismatch("basis dimension must be positive");
}

void OrthonormalBasis::residual_pass(std::span<double> r) const {
    if (count_ == 0) return;
    std::vector<double> coeffs(count_);
    kernels::row_dots(data_, count_, dim_, r, coeffs);
    kernels::subtract_combination(data_, count_, dim_, coeffs, r);
}

bool OrthonormalBasis::add(std::span<const double> y) {
    if (static_cast<int>(y.size()) != dim_) throw DimensionMismatch("basis add: wrong vector length");
    if (count_ == dim_) return false;  // span is already everything
    const double ny = kernels::norm2(y);
    std::vector<double> r(y.begin(), y.end());
    residual_pass(r);
    residual_pass(r);
    const double nr = kernels::norm2(r);
    if (nr <= 1e-10 * ny) return false;
    for (double& v : r) v /= nr;
    data_.insert(data_.end(), r.begin(), r.end());
    ++count_;
    return true;
}

std::vector<double> OrthonormalBasis::project_complement(std::span<const double> y) const {
    if (static_cast<int>(y.size()) != dim_)
        throw DimensionMismatch("project_complement: wrong vector length");
    std::vector<double> r(y.begin(), y.end());
    residual_pass(r);
    residual_pass(r);
    return r;
}

std::vector<double> OrthonormalBasis::sample_unit_in_complement(Rng& rng) const {
    if (count_ >= dim_) throw FullBasis("complement of a full basis is {0}");
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<double> y(dim_);
        for (double& v : y) v = rng.next_gaussian();
        residual_pass(y);
        residual_pass(y);
        const double n = kernels::norm2(y);
        if (n >= 1e-6) {
            for (double& v : y) v /= n;
            return y;
        }
    }
    throw ExhaustedRetries("sample_unit_in_complement: 64 degenerate draws");
}

}  // namespace discrep
