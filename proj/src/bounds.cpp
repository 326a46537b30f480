#include "discrep/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "discrep/eigen.hpp"
#include "discrep/kernels.hpp"

namespace discrep {

namespace {

constexpr double kE = 2.718281828459045235;
constexpr double kPi = 3.141592653589793238;

void check_k(std::span<const double> eigenvalues, int m, int n, int k) {
    if (k < 1 || k > std::min(m, n)) throw BadK("k must lie in 1..min(m, n)");
    if (static_cast<int>(eigenvalues.size()) < k) throw BadK("not enough eigenvalues for k");
}

// Rank honesty: eigenvalues below 1e-12 * lambda_1 count as zero.
double effective(std::span<const double> eigenvalues, int i) {
    const double lam1 = eigenvalues.empty() ? 0.0 : eigenvalues[0];
    const double v = eigenvalues[i];
    return (v < 1e-12 * lam1) ? 0.0 : v;
}

double log_choose(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// det of a small matrix via LU with partial pivoting; fine for k <= 16.
double lu_det(DenseMatrix g) {
    const int k = g.rows();
    double det = 1.0;
    for (int c = 0; c < k; ++c) {
        int piv = c;
        for (int r = c + 1; r < k; ++r)
            if (std::fabs(g(r, c)) > std::fabs(g(piv, c))) piv = r;
        if (g(piv, c) == 0.0) return 0.0;
        if (piv != c) {
            for (int j = 0; j < k; ++j) std::swap(g(c, j), g(piv, j));
            det = -det;
        }
        det *= g(c, c);
        for (int r = c + 1; r < k; ++r) {
            const double f = g(r, c) / g(c, c);
            for (int j = c; j < k; ++j) g(r, j) -= f * g(c, j);
        }
    }
    return det;
}

}  // namespace

double eigen_bound_inf(std::span<const double> eigenvalues, int m, int n, int k) {
    check_k(eigenvalues, m, n, k);
    const double lam = effective(eigenvalues, k - 1);
    return k / (2.0 * kE) * std::sqrt(lam / (static_cast<double>(m) * n));
}

double eigen_bound_inf_prod(std::span<const double> eigenvalues, int m, int n, int k) {
    check_k(eigenvalues, m, n, k);
    double log_prod = 0.0;
    for (int i = 0; i < k; ++i) {
        const double lam = effective(eigenvalues, i);
        if (lam == 0.0) return 0.0;
        log_prod += std::log(lam);
    }
    const double log_val = (log_prod - log_choose(n, k) - log_choose(m, k)) / (2.0 * k);
    return 0.5 * std::exp(log_val);
}

double trace_bound(const DenseMatrix& a) {
    const int m = a.rows(), n = a.cols();
    const DenseMatrix g = kernels::gram(a);
    double tr = 0.0;
    for (int i = 0; i < n; ++i) tr += g(i, i);
    if (tr == 0.0) throw ZeroMatrix("trace_bound: tr(A^T A) = 0");
    const double tr_sq = kernels::norm2_squared(g.data());  // tr(M^2) = ||M||_F^2
    return tr * tr / (8.0 * kE * std::min(n, m) * tr_sq) * std::sqrt(tr / std::max(m, n));
}

double eigen_bound_l2(std::span<const double> eigenvalues, int m, int n, int k) {
    check_k(eigenvalues, m, n, k);
    const double lam = effective(eigenvalues, k - 1);
    return k / kE * std::sqrt(lam / (8.0 * kPi * m * n));
}

namespace {

double det_bound_l2_from_spectrum(std::span<const double> eigenvalues, int m, int n,
                                  bool* singular = nullptr) {
    double log_det = 0.0;
    bool zero = static_cast<int>(eigenvalues.size()) < n;
    for (int i = 0; !zero && i < n; ++i) {
        const double lam = effective(eigenvalues, i);
        if (lam == 0.0)
            zero = true;
        else
            log_det += std::log(lam);
    }
    if (singular) *singular = zero;
    if (zero) return 0.0;
    return std::sqrt(n / (8.0 * kPi * kE * m)) * std::exp(log_det / (2.0 * n));
}

}  // namespace

double det_bound_l2(const DenseMatrix& a) {
    const auto eig = sym_eigen(kernels::gram(a));
    return det_bound_l2_from_spectrum(eig.eigenvalues, a.rows(), a.cols());
}

SubmatrixDet best_submatrix_det(const DenseMatrix& a, int k, int max_n) {
    const int m = a.rows(), n = a.cols();
    if (n > max_n) throw TooLarge("best_submatrix_det: n exceeds the enumeration cap");
    if (k < 1 || k > std::min(m, n)) throw BadK("k must lie in 1..min(m, n)");

    std::vector<int> pick(k);
    for (int i = 0; i < k; ++i) pick[i] = i;
    SubmatrixDet best{-1.0, {}};
    while (true) {
        const double det = std::max(0.0, lu_det(kernels::gram(a.columns(pick))));
        if (det > best.value) best = {det, pick};  // strict: keeps the lexicographically first
        // next combination in lexicographic order
        int i = k - 1;
        while (i >= 0 && pick[i] == n - k + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
    return best;
}

BoundReport bound_report(const DenseMatrix& a) {
    const int m = a.rows(), n = a.cols();
    BoundReport rep;
    rep.m = m;
    rep.n = n;
    const auto eig = sym_eigen(kernels::gram(a));
    rep.eigenvalues = eig.eigenvalues;

    const int kmax = std::min(m, n);
    double best_inf = 0.0, best_l2 = 0.0;
    for (int k = 1; k <= kmax; ++k) {
        const double bi = eigen_bound_inf(rep.eigenvalues, m, n, k);
        const double bp = eigen_bound_inf_prod(rep.eigenvalues, m, n, k);
        const double bl = eigen_bound_l2(rep.eigenvalues, m, n, k);
        rep.per_k_inf.emplace_back(k, bi);
        rep.per_k_inf_prod.emplace_back(k, bp);
        rep.per_k_l2.emplace_back(k, bl);
        best_inf = std::max({best_inf, bi, bp});
        best_l2 = std::max(best_l2, bl);
    }

    double tr = 0.0;
    for (double lam : rep.eigenvalues) tr += lam;
    if (tr > 0.0) {
        rep.trace_bound = trace_bound(a);
        best_inf = std::max(best_inf, rep.trace_bound);
    }

    bool singular = false;
    const double db = det_bound_l2_from_spectrum(rep.eigenvalues, m, n, &singular);
    if (!singular) {
        rep.det_bound_l2 = db;
        best_l2 = std::max(best_l2, db);
    }

    rep.best_inf = best_inf;
    rep.best_l2 = best_l2;
    return rep;
}

}  // namespace discrep
