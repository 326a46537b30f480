#pragma once

#include <span>
#include <vector>

#include "discrep/matrix.hpp"

namespace discrep {

enum class NormKind { LInfinity, L2 };

/// A full coloring: every entry exactly -1 or +1.
struct ColorVector {
    std::vector<double> values;

    explicit ColorVector(std::vector<double> v);
    int size() const { return static_cast<int>(values.size()); }
};

/// max_i |<row_i, x>|
double disc_inf(const DenseMatrix& a, std::span<const double> x);

/// ||Ax||_2 / sqrt(m)
double disc_l2(const DenseMatrix& a, std::span<const double> x);

struct DiscExactResult {
    double value;
    ColorVector witness;
};

/// Exact minimum discrepancy over all 2^n colorings (x_1 = +1 fixed by the
/// x -> -x symmetry), with one minimizing witness. Ties break toward the
/// lexicographically smallest coloring. Enumerates in Gray-code order over a
/// fixed chunking of the range, so the result is identical no matter how many
/// threads run. Throws TooLarge past the cap (default 24 columns).
DiscExactResult disc_exact(const DenseMatrix& a, NormKind norm, int max_n = 24);
DiscExactResult disc_exact_serial(const DenseMatrix& a, NormKind norm, int max_n = 24);

/// Exact hereditary discrepancy: max of disc_exact over all nonempty column
/// subsets. The L2 normalization stays 1/sqrt(m) since column deletion never
/// changes the row count. Throws TooLarge past the cap (default 14 columns).
double herdisc_exact(const DenseMatrix& a, NormKind norm, int max_n = 14);
double herdisc_exact_serial(const DenseMatrix& a, NormKind norm, int max_n = 14);

}  // namespace discrep
