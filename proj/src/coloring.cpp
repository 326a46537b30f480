#include "discrep/coloring.hpp"

#include <algorithm>
#include <cmath>

#include "discrep/basis.hpp"
#include "discrep/eigen.hpp"
#include "discrep/kernels.hpp"

namespace discrep {

PartialColoring PartialColoring::zeros(int n) {
    if (n < 1) throw DimensionMismatch("coloring length must be positive");
    PartialColoring p;
    p.x.assign(n, 0.0);
    p.live.resize(n);
    for (int i = 0; i < n; ++i) p.live[i] = i;
    return p;
}

PartialColoring PartialColoring::from_vector(std::vector<double> values) {
    PartialColoring p;
    p.x = std::move(values);
    for (double v : p.x) {
        if (!(std::fabs(v) <= 1.0)) throw Error("partial coloring entries must lie in [-1, 1]");
    }
    p.refresh_live();
    return p;
}

void PartialColoring::refresh_live() {
    live.clear();
    for (int i = 0; i < static_cast<int>(x.size()); ++i)
        if (std::fabs(x[i]) < 1.0) live.push_back(i);
}

PartialColorResult partial_color(const DenseMatrix& a, PartialColoring& state,
                                 std::vector<double>& ax_cache, Rng& rng,
                                 PartialColorTrace* trace) {
    const int k = static_cast<int>(state.live.size());
    if (k == 0) throw NoLiveCoordinates("partial_color: no live coordinates");
    if (static_cast<int>(ax_cache.size()) != a.rows())
        throw DimensionMismatch("partial_color: ax_cache has wrong length");

    const DenseMatrix c = a.columns(state.live);
    const EigenDecomposition eig = sym_eigen(kernels::gram(c));
    const int t = k / 4;

    // Forbidden subspace: top-t eigenvectors now, frozen coordinate
    // directions as they appear.
    OrthonormalBasis basis(k);
    for (int i = 0; i < t; ++i) basis.add(eig.eigenvector(i));

    if (trace) {
        trace->eigenvalues = eig.eigenvalues;
        trace->eigenvectors = eig.eigenvectors;
    }

    std::vector<double> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = state.x[state.live[i]];
    std::vector<char> frozen(k, 0);
    int frozen_count = 0;
    const int need = (k + 1) / 2;

    std::vector<double> cv(a.rows());
    std::vector<double> e(k, 0.0);
    int iterations = 0;
    while (frozen_count < need) {
        if (iterations >= k) throw NumericalStall("partial_color: loop exceeded k iterations");
        ++iterations;

        const std::vector<double> v = basis.sample_unit_in_complement(rng);
        kernels::matvec(c, v, cv);
        const double ip = kernels::dot(ax_cache, cv);
        const double sigma = ip > 0.0 ? -1.0 : 1.0;

        // Largest beta keeping every unfrozen coordinate inside [-1, 1].
        double beta = 0.0;
        int argmin = -1;
        for (int i = 0; i < k; ++i) {
            if (frozen[i] || v[i] == 0.0) continue;
            const double step = sigma * v[i];
            const double candidate = step > 0.0 ? (1.0 - cur[i]) / step : (-1.0 - cur[i]) / step;
            if (argmin < 0 || candidate < beta) {
                beta = candidate;
                argmin = i;
            }
        }
        if (argmin < 0 || !std::isfinite(beta))
            throw NumericalStall("partial_color: no coordinate can move");

        if (trace) {
            trace->step_vectors.push_back(v);
            trace->sigmas.push_back(sigma);
            trace->betas.push_back(beta);
        }

        const double target = (sigma * v[argmin] > 0.0) ? 1.0 : -1.0;
        for (int i = 0; i < k; ++i) {
            if (frozen[i]) continue;
            if (i == argmin)
                cur[i] = target;  // snap the limiting coordinate bit-exactly
            else
                cur[i] += sigma * beta * v[i];
        }
        for (int i = 0; i < k; ++i) {
            if (frozen[i]) continue;
            if (std::fabs(cur[i]) >= 1.0) {
                cur[i] = cur[i] > 0.0 ? 1.0 : -1.0;
                frozen[i] = 1;
                ++frozen_count;
                e[i] = 1.0;
                basis.add(e);
                e[i] = 0.0;
            }
        }
    }

    PartialColorResult res;
    res.iterations = iterations;
    res.frozen_count = frozen_count;
    res.increase_bound = 4.0 * k * eig.eigenvalues[t];
    res.gamma.resize(k);
    for (int i = 0; i < k; ++i) res.gamma[i] = cur[i] - state.x[state.live[i]];

    // Apply: frozen coordinates take their exact snapped values.
    for (int i = 0; i < k; ++i) state.x[state.live[i]] = cur[i];
    state.refresh_live();

    // Advance the cache by C * gamma.
    kernels::matvec(c, res.gamma, cv);
    for (int i = 0; i < a.rows(); ++i) ax_cache[i] += cv[i];
    return res;
}

namespace {

SolveStats finish_stats(const DenseMatrix& a, const ColorVector& x,
                        std::chrono::steady_clock::time_point t0) {
    SolveStats s;
    s.disc2 = disc_l2(a, x.values);
    s.disc_inf = disc_inf(a, x.values);
    s.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return s;
}

}  // namespace

std::pair<ColorVector, SolveStats> l2_minimize(const DenseMatrix& a, Rng& rng) {
    const auto t0 = std::chrono::steady_clock::now();
    PartialColoring state = PartialColoring::zeros(a.cols());
    std::vector<double> ax(a.rows(), 0.0);

    std::vector<double> increases, bounds;
    int calls = 0;
    while (!state.live.empty()) {
        const double before = kernels::norm2_squared(ax);
        const PartialColorResult res = partial_color(a, state, ax, rng);
        increases.push_back(kernels::norm2_squared(ax) - before);
        bounds.push_back(res.increase_bound);
        ++calls;
    }

    ColorVector coloring(state.x);
    SolveStats stats = finish_stats(a, coloring, t0);
    stats.partial_color_calls = calls;
    stats.per_call_increase = std::move(increases);
    stats.per_call_bound = std::move(bounds);
    return {std::move(coloring), std::move(stats)};
}

namespace {

// Last `count` columns of Q from a Householder QR of `b`: an orthonormal set
// spanning a subspace orthogonal to every column of b. Requires
// b.cols() + count <= b.rows().
std::vector<std::vector<double>> qr_tail_columns(DenseMatrix b, int count) {
    const int n = b.rows(), r = b.cols();
    std::vector<std::vector<double>> reflectors;
    reflectors.reserve(r);
    for (int c = 0; c < r; ++c) {
        std::vector<double> h(n, 0.0);
        double norm = 0.0;
        for (int i = c; i < n; ++i) norm += b(i, c) * b(i, c);
        norm = std::sqrt(norm);
        if (norm == 0.0) {
            reflectors.push_back(std::move(h));  // zero reflector: identity
            continue;
        }
        const double alpha = b(c, c) >= 0.0 ? -norm : norm;
        h[c] = b(c, c) - alpha;
        for (int i = c + 1; i < n; ++i) h[i] = b(i, c);
        double hh = 0.0;
        for (int i = c; i < n; ++i) hh += h[i] * h[i];
        if (hh == 0.0) {
            std::fill(h.begin(), h.end(), 0.0);
            reflectors.push_back(std::move(h));
            continue;
        }
        for (int j = c; j < r; ++j) {
            double d = 0.0;
            for (int i = c; i < n; ++i) d += h[i] * b(i, j);
            const double f = 2.0 * d / hh;
            for (int i = c; i < n; ++i) b(i, j) -= f * h[i];
        }
        reflectors.push_back(std::move(h));
    }
    // Q column j = H_1 H_2 ... H_r e_j
    std::vector<std::vector<double>> cols;
    cols.reserve(count);
    for (int j = n - count; j < n; ++j) {
        std::vector<double> q(n, 0.0);
        q[j] = 1.0;
        for (int c = r - 1; c >= 0; --c) {
            const auto& h = reflectors[c];
            double hh = 0.0, d = 0.0;
            for (int i = c; i < n; ++i) {
                hh += h[i] * h[i];
                d += h[i] * q[i];
            }
            if (hh == 0.0) continue;
            const double f = 2.0 * d / hh;
            for (int i = c; i < n; ++i) q[i] -= f * h[i];
        }
        cols.push_back(std::move(q));
    }
    return cols;
}

}  // namespace

std::optional<RandomizedPartialResult> partial_color_randomized(const DenseMatrix& a,
                                                                const PartialColoring& state,
                                                                double delta, double c0, Rng& rng) {
    if (!(delta > 0.0 && delta < 1.0)) throw Error("delta must lie in (0, 1)");
    if (static_cast<int>(state.x.size()) != a.cols())
        throw DimensionMismatch("state length does not match matrix columns");

    // This variant's liveness band is |x_i| < 1 - delta.
    std::vector<int> live;
    for (int i = 0; i < a.cols(); ++i)
        if (std::fabs(state.x[i]) < 1.0 - delta) live.push_back(i);
    const int k = static_cast<int>(live.size());
    if (k < 4) throw Error("partial_color_randomized requires at least 4 live coordinates");

    const DenseMatrix c = a.columns(live);
    const EigenDecomposition eig = sym_eigen(kernels::gram(c));
    const int t = k / 4;

    const double eps = delta / std::sqrt(c0 * std::log2(k / delta));
    const long iteration_cap = static_cast<long>(std::ceil(160.0 / (eps * eps)));

    std::vector<double> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = state.x[live[i]];
    std::vector<char> hit(k, 0);
    int hit_count = 0;
    const int need = (k + 1) / 2;

    for (long iter = 0; iter < iteration_cap; ++iter) {
        if (hit_count >= need) {
            RandomizedPartialResult res;
            res.live = live;
            res.iterations = iter;
            res.frozen_count = hit_count;
            res.gamma.resize(k);
            for (int i = 0; i < k; ++i) res.gamma[i] = cur[i] - state.x[live[i]];
            return res;
        }

        // Forbidden directions: top-t eigenvectors plus every hit coordinate.
        DenseMatrix b(k, t + hit_count);
        for (int j = 0; j < t; ++j)
            for (int r = 0; r < k; ++r) b(r, j) = eig.eigenvectors(r, j);
        int col = t;
        for (int i = 0; i < k; ++i)
            if (hit[i]) b(i, col++) = 1.0;

        const auto q = qr_tail_columns(std::move(b), t);
        std::vector<double> v(k, 0.0);
        for (int j = 0; j < t; ++j) {
            const double g = rng.next_gaussian();
            for (int r = 0; r < k; ++r) v[r] += g * q[j][r];
        }

        for (int i = 0; i < k; ++i) {
            if (hit[i]) continue;
            cur[i] += eps * v[i];
            if (std::fabs(cur[i]) > 1.0) return std::nullopt;  // overshot the cube
            if (std::fabs(cur[i]) >= 1.0 - delta) {
                hit[i] = 1;
                ++hit_count;
            }
        }
    }
    return std::nullopt;  // abort
}

ColorVector round_to_coloring(std::span<const double> x) {
    std::vector<double> out(x.size());
    for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] >= 0.0 ? 1.0 : -1.0;
    return ColorVector(std::move(out));
}

std::pair<ColorVector, SolveStats> l2_minimize_randomized(const DenseMatrix& a, Rng& rng,
                                                          double c0) {
    const int n = a.cols();
    if (n < 4) throw Error("l2_minimize_randomized requires n >= 4");
    const auto t0 = std::chrono::steady_clock::now();
    const double delta = 1.0 / n;

    PartialColoring state = PartialColoring::zeros(n);
    int calls = 0;
    while (true) {
        int band_live = 0;
        for (double v : state.x)
            if (std::fabs(v) < 1.0 - delta) ++band_live;
        if (band_live < 4) break;

        int failures = 0;
        while (true) {
            const auto res = partial_color_randomized(a, state, delta, c0, rng);
            if (res) {
                for (size_t i = 0; i < res->live.size(); ++i)
                    state.x[res->live[i]] += res->gamma[i];
                ++calls;
                break;
            }
            if (++failures >= 64)
                throw RetryLimit("l2_minimize_randomized: 64 consecutive failures");
        }
    }

    ColorVector coloring = round_to_coloring(state.x);
    SolveStats stats = finish_stats(a, coloring, t0);
    stats.partial_color_calls = calls;
    return {std::move(coloring), std::move(stats)};
}

std::pair<ColorVector, SolveStats> sample(const DenseMatrix& a, Rng& rng) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<double> x(a.cols());
    for (double& v : x) v = rng.next_sign();
    ColorVector coloring(std::move(x));
    SolveStats stats = finish_stats(a, coloring, t0);
    stats.draws = 1;
    return {std::move(coloring), std::move(stats)};
}

std::pair<ColorVector, SolveStats> sample_many(const DenseMatrix& a,
                                               std::chrono::duration<double> budget, Rng& rng) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<double> best;
    double best_disc = 0.0;
    long draws = 0;
    std::vector<double> x(a.cols());
    do {
        for (double& v : x) v = rng.next_sign();
        const double d = disc_l2(a, x);
        if (draws == 0 || d < best_disc) {
            best = x;
            best_disc = d;
        }
        ++draws;
    } while (std::chrono::steady_clock::now() - t0 < budget);

    ColorVector coloring(std::move(best));
    SolveStats stats = finish_stats(a, coloring, t0);
    stats.draws = draws;
    return {std::move(coloring), std::move(stats)};
}

}  // namespace discrep
