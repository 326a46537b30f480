#include "discrep/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace discrep {

namespace {

struct Rotation {
    int p, q;
    double c, s;
};

// Round-robin (circle method) schedule: k-1 rounds of disjoint pairs covering
// every (p, q) exactly once per sweep. Index `k` acts as the bye when the
// dimension is odd.
std::vector<std::vector<std::pair<int, int>>> tournament_rounds(int k) {
    const int pad = (k % 2 == 0) ? k : k + 1;
    std::vector<int> slot(pad);
    std::iota(slot.begin(), slot.end(), 0);
    std::vector<std::vector<std::pair<int, int>>> rounds;
    rounds.reserve(pad - 1);
    for (int r = 0; r < pad - 1; ++r) {
        std::vector<std::pair<int, int>> pairs;
        pairs.reserve(pad / 2);
        for (int i = 0; i < pad / 2; ++i) {
            int a = slot[i], b = slot[pad - 1 - i];
            if (a >= k || b >= k) continue;  // bye
            if (a > b) std::swap(a, b);
            pairs.emplace_back(a, b);
        }
        rounds.push_back(std::move(pairs));
        // rotate all but slot 0
        std::rotate(slot.begin() + 1, slot.end() - 1, slot.end());
    }
    return rounds;
}

double offdiag_frobenius(const DenseMatrix& a) {
    const int k = a.rows();
    double s = 0.0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
}

inline Rotation make_rotation(const DenseMatrix& a, int p, int q) {
    const double apq = a(p, q);
    const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    return {p, q, c, t * c};
}

inline void rotate_rows(DenseMatrix& a, const Rotation& r) {
    double* rp = a.row(r.p).data();
    double* rq = a.row(r.q).data();
    const int k = a.cols();
    for (int j = 0; j < k; ++j) {
        const double x = rp[j], y = rq[j];
        rp[j] = r.c * x - r.s * y;
        rq[j] = r.s * x + r.c * y;
    }
}

// Applies every column rotation of a round to one row. The rotations touch
// disjoint column pairs, so the order within the row does not matter.
inline void rotate_row_cols(double* row, const std::vector<Rotation>& rots) {
    for (const Rotation& r : rots) {
        const double x = row[r.p], y = row[r.q];
        row[r.p] = r.c * x - r.s * y;
        row[r.q] = r.s * x + r.c * y;
    }
}

template <bool Parallel>
EigenDecomposition jacobi(const DenseMatrix& m) {
    const int k = m.rows();
    if (k != m.cols()) throw DimensionMismatch("sym_eigen: matrix must be square");

    const double norm_f = m.frobenius_norm();
    double asym = 0.0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) asym = std::max(asym, std::fabs(m(i, j) - m(j, i)));
    if (asym > 1e-10 * (1.0 + norm_f))
        throw NotSymmetric("sym_eigen: input asymmetry exceeds tolerance");

    DenseMatrix a(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) a(i, j) = 0.5 * (m(i, j) + m(j, i));
    DenseMatrix v = DenseMatrix::identity(k);

    const auto rounds = tournament_rounds(k);
    const double converge_thresh = 1e-12 * norm_f;
    const double skip_thresh = 1e-16 * norm_f;

    std::vector<Rotation> rots;
    rots.reserve(k / 2 + 1);
    for (int sweep = 0; sweep < 64; ++sweep) {
        if (offdiag_frobenius(a) <= converge_thresh) break;
        for (const auto& round : rounds) {
            rots.clear();
            for (auto [p, q] : round)
                if (std::fabs(a(p, q)) > skip_thresh) rots.push_back(make_rotation(a, p, q));
            if (rots.empty()) continue;
            const int nr = static_cast<int>(rots.size());
            const bool big = static_cast<long>(nr) * k >= 4096;
            // Pairs in a round are disjoint: the row phase touches disjoint
            // row pairs, and the column phase updates disjoint column pairs
            // within each row.
            if constexpr (Parallel) {
#pragma omp parallel for schedule(static) if (big)
                for (int i = 0; i < nr; ++i) rotate_rows(a, rots[i]);
#pragma omp parallel for schedule(static) if (big)
                for (int i = 0; i < k; ++i) rotate_row_cols(a.row(i).data(), rots);
#pragma omp parallel for schedule(static) if (big)
                for (int i = 0; i < k; ++i) rotate_row_cols(v.row(i).data(), rots);
            } else {
                for (int i = 0; i < nr; ++i) rotate_rows(a, rots[i]);
                for (int i = 0; i < k; ++i) rotate_row_cols(a.row(i).data(), rots);
                for (int i = 0; i < k; ++i) rotate_row_cols(v.row(i).data(), rots);
            }
            for (const auto& r : rots) {
                a(r.p, r.q) = 0.0;
                a(r.q, r.p) = 0.0;
            }
        }
    }

    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return a(x, x) > a(y, y); });

    const double psd_tol = 1e-6 * norm_f;
    EigenDecomposition out{std::vector<double>(k), DenseMatrix(k, k)};
    for (int i = 0; i < k; ++i) {
        double lam = a(order[i], order[i]);
        if (lam < -psd_tol) throw NotPSD("sym_eigen: eigenvalue below -1e-6 * ||M||_F");
        if (lam < 0.0) lam = 0.0;
        out.eigenvalues[i] = lam;
        for (int r = 0; r < k; ++r) out.eigenvectors(r, i) = v(r, order[i]);
    }
    return out;
}

}  // namespace

EigenDecomposition sym_eigen(const DenseMatrix& m) {
#ifdef _OPENMP
    return jacobi<true>(m);
#else
    return jacobi<false>(m);
#endif
}

EigenDecomposition sym_eigen_serial(const DenseMatrix& m) { return jacobi<false>(m); }

}  // namespace discrep
