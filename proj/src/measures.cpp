#include "discrep/measures.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>

#include "discrep/kernels.hpp"

namespace discrep {

ColorVector::ColorVector(std::vector<double> v) : values(std::move(v)) {
    if (values.empty()) throw DimensionMismatch("coloring must be nonempty");
    for (double x : values)
        if (x != 1.0 && x != -1.0) throw Error("coloring entries must be exactly +1 or -1");
}

double disc_inf(const DenseMatrix& a, std::span<const double> x) {
    std::vector<double> ax(a.rows());
    kernels::matvec(a, x, ax);
    double best = 0.0;
    for (double v : ax) best = std::max(best, std::fabs(v));
    return best;
}

double disc_l2(const DenseMatrix& a, std::span<const double> x) {
    std::vector<double> ax(a.rows());
    kernels::matvec(a, x, ax);
    return std::sqrt(kernels::norm2_squared(ax) / a.rows());
}

namespace {

// State of one Gray-code scan over the colorings of a column subset.
// Coloring index t in [0, 2^(w-1)) maps to the sign pattern where bit b of
// gray(t) = t ^ (t >> 1) flips column cols[b + 1]; cols[0] is pinned to +1.
struct GrayScan {
    const DenseMatrix& a;
    std::span<const int> cols;
    bool l2;
    std::vector<double> ax;

    GrayScan(const DenseMatrix& a, std::span<const int> cols, bool l2)
        : a(a), cols(cols), l2(l2), ax(a.rows()) {}

    void init(uint64_t t) {
        const uint64_t mask = t ^ (t >> 1);
        const int m = a.rows();
        std::fill(ax.begin(), ax.end(), 0.0);
        for (size_t b = 0; b < cols.size(); ++b) {
            const double sign = (b > 0 && ((mask >> (b - 1)) & 1)) ? -1.0 : 1.0;
            const int j = cols[b];
            for (int i = 0; i < m; ++i) ax[i] += sign * a(i, j);
        }
    }

    // Advance from coloring t to t+1: flip the column selected by the Gray
    // sequence. `mask` tracks gray(t).
    void step(uint64_t t, uint64_t& mask) {
        const int bit = std::countr_zero(t + 1);
        const int j = cols[bit + 1];
        const int m = a.rows();
        const uint64_t was_neg = (mask >> bit) & 1;
        const double delta = was_neg ? 2.0 : -2.0;
        for (int i = 0; i < m; ++i) ax[i] += delta * a(i, j);
        mask ^= (uint64_t{1} << bit);
    }

    // Comparison key: L-inf uses max |(Ax)_i|, L2 uses ||Ax||^2. Both are
    // monotone in the reported value, so ties on the key are ties on the value.
    double key() const {
        if (l2) return kernels::norm2_squared(ax);
        double best = 0.0;
        for (double v : ax) best = std::max(best, std::fabs(v));
        return best;
    }
};

// Lexicographic rank of the coloring encoded by gray mask: earlier columns are
// more significant and -1 sorts before +1.
uint64_t lex_rank(uint64_t mask, int width) {
    uint64_t key = 0;
    for (int b = 0; b < width; ++b) key = (key << 1) | (((mask >> b) & 1) ? 0 : 1);
    return key;
}

struct ScanBest {
    double key = 0.0;
    uint64_t lex = 0;
    uint64_t mask = 0;
    bool valid = false;

    void offer(double k, uint64_t m, int width) {
        if (!valid || k < key) {
            key = k;
            mask = m;
            lex = lex_rank(m, width);
            valid = true;
        } else if (k == key) {
            const uint64_t l = lex_rank(m, width);
            if (l < lex) {
                lex = l;
                mask = m;
            }
        }
    }

    void merge(const ScanBest& o) {
        if (!o.valid) return;
        if (!valid || o.key < key || (o.key == key && o.lex < lex)) *this = o;
    }
};

ScanBest scan_range(const DenseMatrix& a, std::span<const int> cols, bool l2, uint64_t t0,
                    uint64_t t1) {
    const int width = static_cast<int>(cols.size()) - 1;
    GrayScan scan(a, cols, l2);
    scan.init(t0);
    uint64_t mask = t0 ^ (t0 >> 1);
    ScanBest best;
    for (uint64_t t = t0; t < t1; ++t) {
        best.offer(scan.key(), mask, width);
        if (t + 1 < t1) scan.step(t, mask);
    }
    return best;
}

ScanBest scan_all(const DenseMatrix& a, std::span<const int> cols, bool l2, bool parallel) {
    const uint64_t total = uint64_t{1} << (cols.size() - 1);
    // Chunk count is fixed (independent of thread count) so parallel and
    // serial scans produce identical results, ties included.
    const uint64_t nchunks = std::min<uint64_t>(total, 64);
    std::vector<ScanBest> part(nchunks);
#ifdef _OPENMP
    if (parallel && total >= 1024) {
#pragma omp parallel for schedule(dynamic)
        for (long long c = 0; c < static_cast<long long>(nchunks); ++c) {
            const uint64_t lo = total * c / nchunks;
            const uint64_t hi = total * (c + 1) / nchunks;
            part[c] = scan_range(a, cols, l2, lo, hi);
        }
        ScanBest best;
        for (const auto& p : part) best.merge(p);
        return best;
    }
#endif
    (void)parallel;
    ScanBest best;
    for (uint64_t c = 0; c < nchunks; ++c) {
        const uint64_t lo = total * c / nchunks;
        const uint64_t hi = total * (c + 1) / nchunks;
        part[c] = scan_range(a, cols, l2, lo, hi);
        best.merge(part[c]);
    }
    return best;
}

DiscExactResult disc_exact_impl(const DenseMatrix& a, NormKind norm, int max_n, bool parallel) {
    const int n = a.cols();
    if (n > max_n) throw TooLarge("disc_exact: n exceeds the enumeration cap");
    std::vector<int> cols(n);
    for (int j = 0; j < n; ++j) cols[j] = j;
    const bool l2 = norm == NormKind::L2;
    const ScanBest best = scan_all(a, cols, l2, parallel);

    std::vector<double> witness(n, 1.0);
    for (int b = 0; b + 1 < n; ++b)
        if ((best.mask >> b) & 1) witness[b + 1] = -1.0;
    const double value = l2 ? std::sqrt(best.key / a.rows()) : best.key;
    return {value, ColorVector(std::move(witness))};
}

double herdisc_exact_impl(const DenseMatrix& a, NormKind norm, int max_n, bool parallel) {
    const int n = a.cols();
    if (n > max_n) throw TooLarge("herdisc_exact: n exceeds the enumeration cap");
    const bool l2 = norm == NormKind::L2;
    const uint64_t subsets = uint64_t{1} << n;
    const long long last = static_cast<long long>(subsets);

    double best = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64) reduction(max : best) if (parallel && n >= 8)
#endif
    for (long long s = 1; s < last; ++s) {
        std::vector<int> cols;
        for (int j = 0; j < n; ++j)
            if ((s >> j) & 1) cols.push_back(j);
        const ScanBest sb = scan_all(a, cols, l2, false);
        const double value = l2 ? std::sqrt(sb.key / a.rows()) : sb.key;
        best = std::max(best, value);
    }
    return best;
}

}  // namespace

DiscExactResult disc_exact(const DenseMatrix& a, NormKind norm, int max_n) {
    return disc_exact_impl(a, norm, max_n, true);
}

DiscExactResult disc_exact_serial(const DenseMatrix& a, NormKind norm, int max_n) {
    return disc_exact_impl(a, norm, max_n, false);
}

double herdisc_exact(const DenseMatrix& a, NormKind norm, int max_n) {
    return herdisc_exact_impl(a, norm, max_n, true);
}

double herdisc_exact_serial(const DenseMatrix& a, NormKind norm, int max_n) {
    return herdisc_exact_impl(a, norm, max_n, false);
}

}  // namespace discrep
