#pragma once

#include <span>
#include <vector>

#include "discrep/rng.hpp"

namespace discrep {

/// Incrementally grown set of mutually orthonormal vectors. All projections
/// use two-pass (re-orthogonalized) classical Gram-Schmidt, which keeps
/// pairwise inner products below 1e-10 even for thousands of vectors.
/// Single-writer: callers must not add() concurrently.
class OrthonormalBasis {
  public:
    explicit OrthonormalBasis(int dim);

    int dim() const { return dim_; }
    int size() const { return count_; }

    std::span<const double> vec(int i) const {
        return {data_.data() + static_cast<size_t>(i) * dim_, static_cast<size_t>(dim_)};
    }

    /// Appends the normalized residual of y against the basis. Returns false
    /// (basis unchanged) when the residual norm is at most 1e-10 * ||y||,
    /// i.e. y is linearly dependent on the stored vectors.
    bool add(std::span<const double> y);

    /// y minus its projection onto the basis span, re-orthogonalized once.
    std::vector<double> project_complement(std::span<const double> y) const;

    /// Uniform random unit vector in the orthogonal complement: Gaussian
    /// sample projected and normalized, retried while the projection is
    /// shorter than 1e-6. Throws FullBasis when the complement is {0} and
    /// ExhaustedRetries after 64 failed draws.
    std::vector<double> sample_unit_in_complement(Rng& rng) const;

  private:
    int dim_;
    int count_ = 0;
    std::vector<double> data_;  // count_ rows of dim_

    void residual_pass(std::span<double> r) const;
};

}  // namespace discrep
